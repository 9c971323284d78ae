#pragma once

#include "tengen/board.hpp"
#include "tengen/sgf.hpp"

#include <array>
#include <vector>

namespace tengen {

// 36 binary planes of board-size x board-size. Fixed layout:
//   0..2   black / white / empty
//   3..6   chain liberties 1 / 2 / 3 / >=4
//   7..12  liberties after playing here 1 / 2 / 3 / 4 / 5 / >=6
//   13     legal for the player to move
//   14..18 where the 1st..5th most recent move was played
//   19..25 opponent stones captured by playing here 1..6 / >=7
//   26     move here is a successful ladder capture
//   27..35 mover's KGS rank 1d..9d (constant planes)
struct FeatureTensor {
    static constexpr int kPlanes = 36;

    enum Plane : int {
        kBlack = 0,
        kWhite = 1,
        kEmptyPlane = 2,
        kLiberties = 3,      // 4 planes
        kLibertiesAfter = 7, // 6 planes
        kLegal = 13,
        kTurnsSince = 14,    // 5 planes
        kCaptureSize = 19,   // 7 planes
        kLadder = 26,
        kRank = 27,          // 9 planes
    };

    int size = 0;
    std::vector<uint8_t> data; // [plane][row][col], values 0/1

    explicit FeatureTensor(int board_size = 19)
        : size(board_size), data(kPlanes * board_size * board_size, 0) {}

    uint8_t& at(int plane, Point p) { return data[(plane * size + p.row) * size + p.col]; }
    uint8_t at(int plane, Point p) const { return data[(plane * size + p.row) * size + p.col]; }
    uint8_t value(int plane, int idx) const { return data[plane * size * size + idx]; }

    // Spatially permutes every plane by g. Rank planes are constant, so the
    // uniform treatment leaves them unchanged.
    FeatureTensor transformed(int g) const;

    friend bool operator==(const FeatureTensor&, const FeatureTensor&) = default;
};

FeatureTensor extract_features(const Position& pos, Rank rank);

// Liberties of the chain that to_play's stone would belong to after playing
// pt, counting points opened by captures. Throws IllegalPoint.
int liberties_after(const Position& pos, Point pt);

// Opponent stones removed by to_play playing pt. Throws IllegalPoint.
int capture_size(const Position& pos, Point pt);

// True when playing pt ataris an adjacent opponent chain and the bounded
// forced-escape search concludes the chain cannot escape. Throws
// IllegalPoint when pt is not legal for to_play.
bool is_ladder_capture(const Position& pos, Point pt);

// Which of the 9 rank planes is filled: Dan(d) -> plane d-1, Pro -> plane 8
// (clamped to 9d), Kyu and Unknown -> none.
std::array<bool, 9> rank_planes(Rank rank);

} // namespace tengen
