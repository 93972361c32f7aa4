#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "evotune/board.hpp"

namespace evotune {

// Parameter indices. The first five are material values (10-bit fields),
// the remaining thirty are positional terms (6-bit fields). This order is
// also the chromosome field order.
enum ParamIndex : int {
  kPawnValue = 0,
  kKnightValue,
  kBishopValue,
  kRookValue,
  kQueenValue,
  kPawnAdvanceA,
  kPawnAdvanceB,
  kPassedPawnMult,
  kDoubledPawnPenalty,
  kIsolatedPawnPenalty,
  kBackwardPawnPenalty,
  kWeakSquarePenalty,
  kPassedPawnEnemyKingDist,
  kKnightSqMult,
  kKnightOutpostMult,
  kBishopMobility,
  kBishopPair,
  kRookAttackKingFile,
  kRookAttackKingAdjFile,
  kRookAttackKingAdjFileAbgh,
  kRook7thRank,
  kRookConnected,
  kRookMobility,
  kRookBehindPassedPawn,
  kRookOpenFile,
  kRookSemiOpenFile,
  kRookAtckWeakPawnOpenColumn,
  kRookColumnMult,
  kQueenMobility,
  kKingNoFriendlyPawn,
  kKingNoFriendlyPawnAdj,
  kKingFriendlyPawnAdvanced1,
  kKingNoEnemyPawn,
  kKingNoEnemyPawnAdj,
  kKingPressureMult,
  kParamCount
};

inline constexpr int kMaterialParamCount = 5;

// Canonical parameter names, indexed by ParamIndex.
extern const std::array<const char*, kParamCount> kParamNames;

// Field width in bits: 10 for material, 6 for positional parameters.
constexpr int param_bits(int index) { return index < kMaterialParamCount ? 10 : 6; }
// Inclusive upper bound: 1023 for material, 63 for positional parameters.
constexpr int param_max(int index) { return (1 << param_bits(index)) - 1; }

// Index for a parameter name; -1 if unknown.
int param_index(const std::string& name);

// The 35 evaluation weights in centipawns (or centipawn multipliers).
struct EvalParams {
  std::array<int, kParamCount> values{};

  int& operator[](int i) { return values[i]; }
  int operator[](int i) const { return values[i]; }
  bool operator==(const EvalParams&) const = default;

  // Throws DataError naming the first out-of-range parameter.
  void check_bounds() const;

  // The bundled reference weights (a known-good hand-curated set used by
  // demos, benchmarks, and as a default match opponent).
  static EvalParams reference();
};

// Per-feature counts as white-minus-black, with penalty features already
// negated for the owning side, so that a position's score for white is
// exactly the dot product with the parameter vector.
using FeatureVector = std::array<int, kParamCount>;

// Deterministic integer feature counts. Antisymmetric under Position::
// mirrored(): every component negates.
FeatureVector extract_features(const Position& p);

// Upper bound on the absolute value of each feature count on a legal
// position; used by sanity sweeps and the score clamp rationale.
extern const std::array<int, kParamCount> kFeatureCountBound;

// Dot product of a prepared feature vector with the weights, from white's
// perspective.
int64_t dot(const FeatureVector& f, const EvalParams& params);

// Score in centipawns from the side to move: the white-perspective dot
// product, negated when black is to move.
int evaluate(const Position& p, const EvalParams& params);

// As evaluate(), but reusing a prepared feature vector for the position.
int evaluate_features(const FeatureVector& f, Color side_to_move, const EvalParams& params);

// Parameter file format: one "NAME value" pair per line, '#' starts a
// comment, blank lines ignored, order-insensitive, every parameter must
// appear exactly once. Throws DataError on malformed, unknown, duplicate,
// missing, or out-of-range entries.
EvalParams read_params(std::istream& in);
EvalParams load_params(const std::string& path);
void write_params(std::ostream& out, const EvalParams& params);
void save_params(const std::string& path, const EvalParams& params);

}  // namespace evotune
