#pragma once

#include <vector>

#include "varseq/types.hpp"

namespace varseq::detail {

/// Unnormalized in-place complex DFT; forward uses exp(-2 pi i jk / n).
void dft(std::vector<Complex>& data, bool inverse);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace varseq::detail
