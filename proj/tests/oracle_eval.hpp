#pragma once

// The 35-entry feature vector (white minus black, penalty features
// negated), recounted square-by-square from the definitions. Shares no
// implementation with the production extractor.

#include <array>

#include "oracle_board.hpp"

namespace oracle {

std::array<int, 35> features(const Board& b);

}  // namespace oracle
