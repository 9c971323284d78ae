#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rules_oracle.hpp"
#include "tengen/board.hpp"
#include "tengen/rng.hpp"

#include <set>

using namespace tengen;
using tengen::testing::NaiveBoard;

namespace {

Position random_position(int size, int moves, uint64_t seed) {
    Position pos(size);
    Rng rng(seed);
    for (int i = 0; i < moves; ++i) {
        std::vector<Point> legal;
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                Point p{(uint8_t)c, (uint8_t)r};
                if (pos.is_legal(Move::play(pos.to_play(), p))) legal.push_back(p);
            }
        }
        if (legal.empty()) break;
        pos.apply(Move::play(pos.to_play(), legal[rng.next_below((uint32_t)legal.size())]));
    }
    return pos;
}

} // namespace

TEST_CASE("first stone on an empty board") {
    Position pos(19);
    pos.apply(Move::play(Color::Black, Point{3, 3}));
    CHECK(pos.at(Point{3, 3}) == Color::Black);
    CHECK(pos.chain_size(Point{3, 3}) == 1);
    CHECK(pos.chain_liberties(Point{3, 3}) == 4);
    CHECK(pos.to_play() == Color::White);
    CHECK(pos.history().size() == 1);
}

TEST_CASE("corner capture on 5x5") {
    Position pos = Position::from_setup(5, {Point{1, 0}}, {Point{0, 0}}, Color::Black);
    NaiveBoard ref = NaiveBoard::from_position(pos);
    pos.apply(Move::play(Color::Black, Point{0, 1}));
    int captured = ref.play(Point{0, 1}, Color::Black);
    CHECK(captured == 1);
    CHECK(pos.at(Point{0, 0}) == Color::Empty);
    CHECK(pos.captures_by(Color::Black) == 1);
    CHECK(pos.captures_by(Color::White) == 0);
    CHECK(pos.at(Point{0, 1}) == Color::Black);
}

TEST_CASE("occupied point rejected") {
    Position pos(9);
    pos.apply(Move::play(Color::Black, Point{4, 4}));
    CHECK_THROWS_AS(pos.play(Move::play(Color::White, Point{4, 4})), IllegalMove);
    try {
        pos.play(Move::play(Color::White, Point{4, 4}));
    } catch (const IllegalMove& e) {
        CHECK(e.reason == IllegalReason::Occupied);
    }
}

TEST_CASE("empty board fully legal, pass always legal") {
    Position pos(19);
    int legal = 0;
    for (int r = 0; r < 19; ++r) {
        for (int c = 0; c < 19; ++c) {
            if (pos.is_legal(Move::play(Color::Black, Point{(uint8_t)c, (uint8_t)r}))) ++legal;
        }
    }
    CHECK(legal == 361);
    CHECK(pos.is_legal(Move::pass(Color::Black)));
}

TEST_CASE("suicide forbidden") {
    // White to move into a one-point hole surrounded by black.
    Position pos = Position::from_setup(
        5, {Point{1, 0}, Point{0, 1}, Point{2, 1}, Point{1, 2}}, {Point{4, 4}}, Color::White);
    auto reason = pos.legality(Move::play(Color::White, Point{1, 1}));
    REQUIRE(reason.has_value());
    CHECK(*reason == IllegalReason::Suicide);
    // Black may fill its own eye point (not suicide: outside liberties remain).
    CHECK(pos.is_legal(Move::play(Color::Black, Point{1, 1})) == false); // wrong color
    pos.set_to_play(Color::Black);
    CHECK(pos.is_legal(Move::play(Color::Black, Point{1, 1})));
}

TEST_CASE("immediate ko recapture is a superko violation") {
    Position pos = Position::from_setup(5, {Point{1, 0}, Point{0, 1}, Point{1, 2}},
                                        {Point{2, 0}, Point{3, 1}, Point{2, 2}, Point{1, 1}},
                                        Color::Black);
    NaiveBoard ref = NaiveBoard::from_position(pos);
    const uint64_t before_capture = pos.board_hash();
    pos.apply(Move::play(Color::Black, Point{2, 1}));
    ref.play(Point{2, 1}, Color::Black);
    CHECK(pos.at(Point{1, 1}) == Color::Empty);

    auto fast = pos.legality(Move::play(Color::White, Point{1, 1}));
    auto slow = ref.legality(Point{1, 1}, Color::White);
    REQUIRE(fast.has_value());
    REQUIRE(slow.has_value());
    CHECK(*fast == IllegalReason::SuperkoRepetition);
    CHECK(*slow == IllegalReason::SuperkoRepetition);

    // The forbidden move would recreate the pre-capture grid hash.
    (void)before_capture;
    CHECK(pos.hash_history().front() == before_capture);
}

TEST_CASE("chain_at basics") {
    Position pos(19);
    pos.apply(Move::play(Color::Black, Point{9, 9}));
    auto center = pos.chain_at(Point{9, 9});
    CHECK(center.stones.size() == 1);
    CHECK(center.liberties.size() == 4);

    pos = Position(19);
    pos.apply(Move::play(Color::Black, Point{0, 0}));
    auto corner = pos.chain_at(Point{0, 0});
    CHECK(corner.stones.size() == 1);
    CHECK(corner.liberties.size() == 2);

    CHECK_THROWS_AS(pos.chain_at(Point{5, 5}), EmptyPoint);
}

TEST_CASE("two-stone edge block liberties match flood fill") {
    Position pos = Position::from_setup(5, {Point{0, 2}, Point{1, 2}}, {}, Color::White);
    NaiveBoard ref = NaiveBoard::from_position(pos);
    auto view = pos.chain_at(Point{0, 2});
    CHECK(view.stones.size() == 2);
    CHECK(view.stones == ref.chain_points(Point{0, 2}));
    CHECK(view.liberties == ref.chain_liberties(Point{0, 2}));
}

TEST_CASE("scoring empty and one-sided boards") {
    Position empty(19);
    auto s = empty.score(7.5);
    CHECK(s.black_area == 0);
    CHECK(s.white_area == 0);
    CHECK(s.winner == GameWinner::White);
    CHECK(s.margin == doctest::Approx(7.5));

    // All empty regions border only black: whole board is black area.
    Position pos = Position::from_setup(
        5, {Point{2, 0}, Point{1, 1}, Point{2, 1}, Point{3, 1}, Point{2, 2}, Point{0, 3}}, {},
        Color::White);
    auto s2 = pos.score(7.5);
    CHECK(s2.black_area == 25);
    CHECK(s2.white_area == 0);
    CHECK(s2.winner == GameWinner::Black);
}

TEST_CASE("random terminal scoring agrees with region-labeling oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Position pos = random_position(5, 18 + (int)rng.next_below(10), rng.next_u64());
        NaiveBoard ref = NaiveBoard::from_position(pos);
        auto a = pos.score(7.5);
        auto b = ref.score(7.5);
        CHECK(a.black_area == b.black_area);
        CHECK(a.white_area == b.white_area);
        CHECK(a.winner == b.winner);
    }
}

TEST_CASE("transform conventions") {
    Position pos(19);
    pos.apply(Move::play(Color::Black, Point{0, 0}));

    SUBCASE("identity is bit-identical") {
        CHECK(pos.transformed(0) == pos);
    }
    SUBCASE("quarter turn maps the corner per the fixed convention") {
        Position rot = pos.transformed(1);
        CHECK(rot.at(Point{18, 0}) == Color::Black);
        CHECK(rot.history().size() == 1);
        CHECK(rot.history()[0].point == Point{18, 0});
    }
}

TEST_CASE("transform round trips and group action") {
    for (int g = 0; g < 8; ++g) {
        CHECK(compose_transforms(inverse_transform(g), g) == 0);
        CHECK(compose_transforms(g, inverse_transform(g)) == 0);
    }
    // Group action on points: all 64 pairs.
    for (int g1 = 0; g1 < 8; ++g1) {
        for (int g2 = 0; g2 < 8; ++g2) {
            const int composed = compose_transforms(g2, g1);
            for (int idx = 0; idx < 19 * 19; idx += 17) {
                Point p = point_from_index(idx, 19);
                CHECK(transform_point(transform_point(p, g1, 19), g2, 19) ==
                      transform_point(p, composed, 19));
            }
        }
    }
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Position pos = random_position(9, 30, rng.next_u64());
        for (int g = 0; g < 8; ++g) {
            CHECK(pos.transformed(g).transformed(inverse_transform(g)) == pos);
        }
        // Scoring is blind to orientation.
        auto base = pos.score(7.5);
        for (int g = 1; g < 8; ++g) {
            auto s = pos.transformed(g).score(7.5);
            CHECK(s.black_area == base.black_area);
            CHECK(s.white_area == base.white_area);
        }
    }
}

TEST_CASE("position hash semantics") {
    Position a(19);
    CHECK(a.board_hash() == 0); // stones-only hash of the empty board
    const uint64_t empty_hash = a.position_hash();
    CHECK(empty_hash == Position(19).position_hash());

    // Transpositions: same stones, same side to move, different move order.
    Position p1(9), p2(9);
    p1.apply(Move::play(Color::Black, Point{2, 2}));
    p1.apply(Move::play(Color::White, Point{6, 6}));
    p1.apply(Move::play(Color::Black, Point{4, 4}));
    p2.apply(Move::play(Color::Black, Point{4, 4}));
    p2.apply(Move::play(Color::White, Point{6, 6}));
    p2.apply(Move::play(Color::Black, Point{2, 2}));
    CHECK(p1.position_hash() == p2.position_hash());

    // Recoloring a stone changes the hash.
    Position q1 = Position::from_setup(9, {Point{3, 3}}, {}, Color::White);
    Position q2 = Position::from_setup(9, {}, {Point{3, 3}}, Color::White);
    CHECK(q1.position_hash() != q2.position_hash());
    CHECK(q1.board_hash() != q2.board_hash());
}

TEST_CASE("randomized playouts agree with the naive reference") {
    CHECK(tengen::testing::random_playout_agreement(5, 120, 101) > 60);
    CHECK(tengen::testing::random_playout_agreement(9, 120, 202) > 100);
}

TEST_CASE("rebuild_chains reproduces incremental caches") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Position pos = random_position(9, 40, rng.next_u64());
        Position rebuilt = pos;
        rebuilt.rebuild_chains();
        for (int r = 0; r < 9; ++r) {
            for (int c = 0; c < 9; ++c) {
                Point p{(uint8_t)c, (uint8_t)r};
                if (pos.at(p) == Color::Empty) continue;
                CHECK(pos.chain_liberties(p) == rebuilt.chain_liberties(p));
                CHECK(pos.chain_size(p) == rebuilt.chain_size(p));
                auto va = pos.chain_at(p);
                auto vb = rebuilt.chain_at(p);
                CHECK(va.stones == vb.stones);
                CHECK(va.liberties == vb.liberties);
            }
        }
    }
}

TEST_CASE("value semantics: play leaves the original untouched") {
    Position pos(9);
    Position next = pos.play(Move::play(Color::Black, Point{4, 4}));
    CHECK(pos.at(Point{4, 4}) == Color::Empty);
    CHECK(next.at(Point{4, 4}) == Color::Black);
    CHECK(pos.history().empty());
    CHECK(next.history().size() == 1);
}
