#include "tengen/zobrist.hpp"

#include "tengen/rng.hpp"

#include <array>

namespace tengen::zobrist {
namespace {

struct Tables {
    std::array<std::array<uint64_t, 2>, kMaxBoardSize * kMaxBoardSize> stones;
    std::array<uint64_t, 2> sides;

    Tables() {
        // Fixed stream so hashes (and the empty-board constant) never change
        // between runs or builds.
        uint64_t x = 0x7454454e47454eULL; // "tTENGEN"
        for (auto& per_point : stones) {
            per_point[0] = Rng::split_mix(x);
            per_point[1] = Rng::split_mix(x);
        }
        sides[0] = Rng::split_mix(x);
        sides[1] = Rng::split_mix(x);
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

} // namespace

uint64_t stone_key(int row, int col, int color_index) {
    return tables().stones[row * kMaxBoardSize + col][color_index];
}

uint64_t side_key(int color_index) {
    return tables().sides[color_index];
}

} // namespace tengen::zobrist
