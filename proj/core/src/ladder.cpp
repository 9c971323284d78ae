#include "tengen/features.hpp"

#include <array>

namespace tengen {

namespace {

constexpr int kMaxPlies = 64;
// Generous cap on explored positions; forced-escape trees branch very
// little, so ordinary reads stay far below it.
constexpr int kNodeBudget = 200000;

enum class EscapeResult { Captured, Escaped };

struct LadderSearch {
    int nodes = 0;

    // All liberties of the chain at `pt` in `pos`, plus the attacker chains
    // in atari adjacent to it, gathered through the public chain view so
    // the walk stays simple.
    static std::vector<Point> chain_liberty_points(const Position& pos, Point pt) {
        return pos.chain_at(pt).liberties;
    }

    // pos.to_play() is the defender and owns the chain at chain_pt, which
    // is in atari. Decides whether the attacker captures it by force.
    EscapeResult escape(const Position& pos, Point chain_pt, int ply) {
        if (ply >= kMaxPlies || ++nodes > kNodeBudget) return EscapeResult::Escaped;
        const Color defender = pos.to_play();

        // Candidate escapes: extend into the sole liberty, or capture any
        // adjacent attacker chain that is itself in atari.
        std::vector<Move> options;
        const auto view = pos.chain_at(chain_pt);
        options.push_back(Move::play(defender, view.liberties.front()));
        for (const Point s : view.stones) {
            for (const Point nb : neighbors_of(pos, s)) {
                if (pos.at(nb) != opponent(defender)) continue;
                if (pos.chain_liberties(nb) != 1) continue;
                const Point target = pos.chain_at(nb).liberties.front();
                Move m = Move::play(defender, target);
                bool dup = false;
                for (const Move& o : options) dup |= o == m;
                if (!dup) options.push_back(m);
            }
        }

        bool any_escape = false;
        for (const Move& m : options) {
            if (!pos.is_legal(m)) continue;
            Position after = pos.play(m);
            const int libs = after.chain_liberties(chain_pt);
            if (libs >= 3) {
                any_escape = true;
            } else if (libs == 2) {
                if (attacker_turn(after, chain_pt, ply + 1) == EscapeResult::Escaped) {
                    any_escape = true;
                }
            } else {
                // Still in atari after the try; the attacker simply takes.
                const Point last = after.chain_at(chain_pt).liberties.front();
                if (!after.is_legal(Move::play(after.to_play(), last))) any_escape = true;
            }
            if (any_escape) return EscapeResult::Escaped;
        }
        // No legal try escapes (or none exists): the chain falls.
        return EscapeResult::Captured;
    }

    // Defender chain has exactly two liberties; the attacker re-ataris by
    // filling either one. Captured when any legal reply forces the capture.
    EscapeResult attacker_turn(const Position& pos, Point chain_pt, int ply) {
        if (ply >= kMaxPlies || ++nodes > kNodeBudget) return EscapeResult::Escaped;
        const Color attacker = pos.to_play();
        bool forced = false;
        for (const Point lib : chain_liberty_points(pos, chain_pt)) {
            const Move m = Move::play(attacker, lib);
            if (!pos.is_legal(m)) continue;
            Position after = pos.play(m);
            if (after.at(chain_pt) == Color::Empty) continue; // cannot happen: not in atari
            if (after.chain_liberties(chain_pt) != 1) continue;
            forced = true;
            if (escape(after, chain_pt, ply + 1) == EscapeResult::Captured) {
                return EscapeResult::Captured;
            }
        }
        (void)forced;
        return EscapeResult::Escaped;
    }

    static std::vector<Point> neighbors_of(const Position& pos, Point p) {
        std::vector<Point> out;
        const int dc[4] = {0, -1, 1, 0};
        const int dr[4] = {-1, 0, 0, 1};
        for (int i = 0; i < 4; ++i) {
            const int c = p.col + dc[i], r = p.row + dr[i];
            if (c >= 0 && r >= 0 && c < pos.size() && r < pos.size()) {
                out.push_back(Point{(uint8_t)c, (uint8_t)r});
            }
        }
        return out;
    }
};

} // namespace

bool is_ladder_capture(const Position& pos, Point pt) {
    const Color me = pos.to_play();
    if (!pos.is_legal(Move::play(me, pt))) {
        throw IllegalPoint("is_ladder_capture: illegal point");
    }
    const Color opp = opponent(me);

    // Adjacent opponent chains that this play would put into atari.
    std::vector<Point> targets;
    for (const Point nb : LadderSearch::neighbors_of(pos, pt)) {
        if (pos.at(nb) != opp) continue;
        if (pos.chain_liberties(nb) != 2) continue;
        bool dup = false;
        for (const Point t : targets) {
            if (pos.chain_at(t).stones == pos.chain_at(nb).stones) dup = true;
        }
        if (!dup) targets.push_back(nb);
    }
    if (targets.empty()) return false;

    Position after = pos.play(Move::play(me, pt));
    for (const Point target : targets) {
        if (after.at(target) != opp) continue;
        if (after.chain_liberties(target) != 1) continue;
        LadderSearch search;
        if (search.escape(after, target, 0) == EscapeResult::Captured) return true;
    }
    return false;
}

} // namespace tengen
