#include "bdvp/constellation.hpp"

#include <cmath>

#include "bdvp/errors.hpp"

namespace bdvp {

Constellation::Constellation(Modulation m) : modulation_(m) {
  switch (m) {
    case Modulation::kQpsk:
      alphabet_ = {-1, 1};
      half_range_ = 2.0;
      symbol_energy_ = 2.0;
      bits_per_dimension_ = 1;
      break;
    case Modulation::kQam16:
      alphabet_ = {-3, -1, 1, 3};
      half_range_ = 4.0;
      symbol_energy_ = 10.0;
      bits_per_dimension_ = 2;
      break;
  }
}

int Constellation::symbol_from_bits(unsigned bits) const {
  if (bits >= (1u << static_cast<unsigned>(bits_per_dimension_))) {
    throw ParameterError("bit pattern exceeds bits-per-dimension");
  }
  if (modulation_ == Modulation::kQpsk) {
    return bits ? 1 : -1;
  }
  // Gray order over bit pairs: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
  switch (bits) {
    case 0b00: return -3;
    case 0b01: return -1;
    case 0b11: return 1;
    default: return 3;
  }
}

unsigned Constellation::bits_from_symbol(int symbol) const {
  if (modulation_ == Modulation::kQpsk) {
    if (symbol == -1) return 0u;
    if (symbol == 1) return 1u;
    throw ParameterError("value is not a constellation symbol");
  }
  switch (symbol) {
    case -3: return 0b00;
    case -1: return 0b01;
    case 1: return 0b11;
    case 3: return 0b10;
    default: throw ParameterError("value is not a constellation symbol");
  }
}

int Constellation::slice(double value) const {
  int best = alphabet_.front();
  double best_dist = std::abs(value - best);
  for (std::size_t i = 1; i < alphabet_.size(); ++i) {
    const double dist = std::abs(value - alphabet_[i]);
    if (dist < best_dist) {
      best_dist = dist;
      best = alphabet_[i];
    }
  }
  return best;
}

double modulo(double value, double half_range) {
  if (!(half_range > 0.0)) {
    throw ParameterError("modulo half-range must be positive");
  }
  const double period = 2.0 * half_range;
  return value - period * std::floor((value + half_range) / period);
}

Eigen::VectorXd modulo(const Eigen::VectorXd& values, double half_range) {
  Eigen::VectorXd out(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out(i) = modulo(values(i), half_range);
  }
  return out;
}

}  // namespace bdvp
