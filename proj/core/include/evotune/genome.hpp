#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "evotune/eval.hpp"
#include "evotune/rng.hpp"

namespace evotune {

inline constexpr int kChromosomeBits = 230;  // 5 x 10 material + 30 x 6 positional

// Fixed-length bit string; bits_[i] is 0 or 1. Field i of the encoded
// parameter vector occupies param_bits(i) consecutive positions, most
// significant bit first, fields in ParamIndex order.
struct Chromosome {
  std::array<uint8_t, kChromosomeBits> bits{};

  bool operator==(const Chromosome&) const = default;

  // 230 characters, '0'/'1'.
  std::string to_string() const;
  static Chromosome from_string(const std::string& s);  // throws DataError
};

// Throws DataError if any parameter is out of range for its field width.
Chromosome encode(const EvalParams& params);

// Total function: every bit string decodes to in-bounds parameters.
EvalParams decode(const Chromosome& c);

// 230 independent uniform bits, one rng draw per bit in position order.
Chromosome random_chromosome(Rng& rng);

// Cut point drawn uniformly from [1, 229] (one rng draw); children are
// prefix/suffix swaps, so the pair conserves the bits at every position.
std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& a,
                                                         const Chromosome& b, Rng& rng);

// Each bit flipped independently with probability `rate`; one rng draw per
// bit in position order.
Chromosome point_mutate(const Chromosome& c, double rate, Rng& rng);

}  // namespace evotune
