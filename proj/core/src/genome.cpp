#include "evotune/genome.hpp"

namespace evotune {

std::string Chromosome::to_string() const {
  std::string s(kChromosomeBits, '0');
  for (int i = 0; i < kChromosomeBits; ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

Chromosome Chromosome::from_string(const std::string& s) {
  if (s.size() != kChromosomeBits)
    throw DataError("chromosome string must have " + std::to_string(kChromosomeBits) +
                    " characters, got " + std::to_string(s.size()));
  Chromosome c;
  for (int i = 0; i < kChromosomeBits; ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw DataError(std::string("chromosome character '") + s[i] + "' at position " +
                      std::to_string(i) + " is not 0/1");
    c.bits[i] = s[i] == '1';
  }
  return c;
}

Chromosome encode(const EvalParams& params) {
  params.check_bounds();
  Chromosome c;
  int pos = 0;
  for (int i = 0; i < kParamCount; ++i) {
    const int width = param_bits(i);
    for (int b = width - 1; b >= 0; --b) c.bits[pos++] = (params[i] >> b) & 1;
  }
  return c;
}

EvalParams decode(const Chromosome& c) {
  EvalParams params;
  int pos = 0;
  for (int i = 0; i < kParamCount; ++i) {
    int value = 0;
    for (int b = 0; b < param_bits(i); ++b) value = (value << 1) | c.bits[pos++];
    params[i] = value;
  }
  return params;
}

Chromosome random_chromosome(Rng& rng) {
  Chromosome c;
  for (auto& bit : c.bits) bit = static_cast<uint8_t>(rng.next_bit());
  return c;
}

std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& a,
                                                         const Chromosome& b, Rng& rng) {
  const int cut = 1 + static_cast<int>(rng.uniform(kChromosomeBits - 1));
  std::pair<Chromosome, Chromosome> out{a, b};
  for (int i = cut; i < kChromosomeBits; ++i) {
    out.first.bits[i] = b.bits[i];
    out.second.bits[i] = a.bits[i];
  }
  return out;
}

Chromosome point_mutate(const Chromosome& c, double rate, Rng& rng) {
  Chromosome out = c;
  for (auto& bit : out.bits)
    if (rng.bernoulli(rate)) bit ^= 1;
  return out;
}

}  // namespace evotune
