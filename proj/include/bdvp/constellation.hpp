#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace bdvp {

enum class Modulation { kQpsk, kQam16 };

/// Square QAM constellation on the unnormalized integer grid. Each complex
/// symbol is two independent real dimensions drawn from {-1,+1} (QPSK) or
/// {-3,-1,+1,+3} (16-QAM), Gray-mapped per real dimension. Keeping the grid
/// integral keeps the perturbation modulus tau and the modulo half-range K
/// exact; SNR bookkeeping uses the average symbol energy instead.
class Constellation {
 public:
  explicit Constellation(Modulation m);

  Modulation modulation() const { return modulation_; }

  /// Per-dimension alphabet in ascending order.
  const std::vector<int>& alphabet() const { return alphabet_; }

  /// Largest per-dimension magnitude (1 or 3).
  int max_amplitude() const { return alphabet_.back(); }

  /// Spacing between neighboring symbols (always 2).
  double spacing() const { return 2.0; }

  /// Modulo half-range K = sqrt(|constellation|): 2 or 4.
  double half_range() const { return half_range_; }

  /// Perturbation modulus tau = 2 * (max amplitude + spacing / 2) = 2K.
  double tau() const { return 2.0 * (max_amplitude() + spacing() / 2.0); }

  /// Average complex symbol energy E_s (2 for QPSK, 10 for 16-QAM).
  double symbol_energy() const { return symbol_energy_; }

  /// Bits per complex symbol (2 or 4).
  int bits_per_symbol() const { return 2 * bits_per_dimension_; }

  /// Bits per real dimension (1 or 2).
  int bits_per_dimension() const { return bits_per_dimension_; }

  /// Gray map: bits (MSB first for 16-QAM) -> per-dimension symbol.
  int symbol_from_bits(unsigned bits) const;

  /// Inverse Gray map: symbol -> bits.
  unsigned bits_from_symbol(int symbol) const;

  /// Hard decision: nearest alphabet point, ties toward the smaller value.
  int slice(double value) const;

 private:
  Modulation modulation_;
  std::vector<int> alphabet_;
  double half_range_;
  double symbol_energy_;
  int bits_per_dimension_;
};

/// Elementwise symmetric modulo onto [-half_range, half_range).
double modulo(double value, double half_range);
Eigen::VectorXd modulo(const Eigen::VectorXd& values, double half_range);

}  // namespace bdvp
