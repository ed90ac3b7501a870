#include "bdvp/format.hpp"

#include <charconv>

#include "bdvp/errors.hpp"

namespace bdvp {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string modulation_name(Modulation m) {
  return m == Modulation::kQpsk ? "qpsk" : "qam16";
}

std::string criterion_name(Criterion c) {
  return c == Criterion::kZf ? "zf" : "mmse";
}

std::string encoder_name(Encoder e) {
  switch (e) {
    case Encoder::kThp:
      return "thp";
    case Encoder::kFse:
      return "fse";
    case Encoder::kQrdm:
      return "qrdme";
    case Encoder::kExhaustive:
      return "exhaustive";
  }
  return "unknown";
}

Modulation modulation_from_name(const std::string& name) {
  if (name == "qpsk") return Modulation::kQpsk;
  if (name == "qam16") return Modulation::kQam16;
  throw ParameterError("unknown modulation '" + name + "' (expected qpsk or qam16)");
}

Criterion criterion_from_name(const std::string& name) {
  if (name == "zf") return Criterion::kZf;
  if (name == "mmse") return Criterion::kMmse;
  throw ParameterError("unknown criterion '" + name + "' (expected zf or mmse)");
}

Encoder encoder_from_name(const std::string& name) {
  if (name == "thp") return Encoder::kThp;
  if (name == "fse") return Encoder::kFse;
  if (name == "qrdme") return Encoder::kQrdm;
  if (name == "exhaustive") return Encoder::kExhaustive;
  throw ParameterError("unknown encoder '" + name +
                       "' (expected thp, fse, qrdme or exhaustive)");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto trim = [](std::string s) {
    const std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return std::string();
    const std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
  };
  if (trim(text).empty()) return out;
  while (true) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(text.substr(start)));
      break;
    }
    out.push_back(trim(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

}  // namespace bdvp
