#pragma once

#include <cstdint>

namespace tengen::zobrist {

inline constexpr int kMaxBoardSize = 19;

// Per-(point, color) keys. Points are indexed row * 19 + col so the same
// table serves every board size up to 19.
uint64_t stone_key(int row, int col, int color_index); // color_index: 0 black, 1 white
uint64_t side_key(int color_index);

} // namespace tengen::zobrist
