#include "rules_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tengen::testing {

NaiveBoard::NaiveBoard(int size) : size_(size), grid_(size * size, Color::Empty) {
    past_grids_.push_back(grid_);
}

NaiveBoard NaiveBoard::from_position(const Position& p) {
    NaiveBoard b(p.size());
    for (int r = 0; r < p.size(); ++r) {
        for (int c = 0; c < p.size(); ++c) {
            Point pt{(uint8_t)c, (uint8_t)r};
            b.grid_[b.idx(pt)] = p.at(pt);
        }
    }
    b.to_play_ = p.to_play();
    b.past_grids_.assign(1, b.grid_);
    return b;
}

std::vector<Point> NaiveBoard::neighbors(Point p) const {
    std::vector<Point> out;
    const int dc[4] = {0, -1, 1, 0};
    const int dr[4] = {-1, 0, 0, 1};
    for (int i = 0; i < 4; ++i) {
        int c = p.col + dc[i], r = p.row + dr[i];
        if (on_board(c, r)) out.push_back(Point{(uint8_t)c, (uint8_t)r});
    }
    return out;
}

std::vector<Point> NaiveBoard::chain_points(Point p) const {
    const Color color = at(p);
    if (color != Color::Black && color != Color::White) {
        throw std::invalid_argument("chain_points: empty");
    }
    std::vector<bool> seen(size_ * size_, false);
    std::vector<Point> stack{p}, out;
    seen[idx(p)] = true;
    while (!stack.empty()) {
        Point cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        for (Point n : neighbors(cur)) {
            if (!seen[idx(n)] && at(n) == color) {
                seen[idx(n)] = true;
                stack.push_back(n);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](Point a, Point b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return out;
}

std::vector<Point> NaiveBoard::chain_liberties(Point p) const {
    std::vector<bool> lib(size_ * size_, false);
    for (Point s : chain_points(p)) {
        for (Point n : neighbors(s)) {
            if (at(n) == Color::Empty) lib[idx(n)] = true;
        }
    }
    std::vector<Point> out;
    for (int r = 0; r < size_; ++r) {
        for (int c = 0; c < size_; ++c) {
            if (lib[r * size_ + c]) out.push_back(Point{(uint8_t)c, (uint8_t)r});
        }
    }
    return out;
}

std::vector<Color> NaiveBoard::grid_after(Point p, Color c) const {
    std::vector<Color> next = grid_;
    next[idx(p)] = c;
    const Color opp = opponent(c);

    auto flood_no_libs = [&](Point start) {
        const Color color = next[idx(start)];
        std::vector<bool> seen(size_ * size_, false);
        std::vector<Point> stack{start}, stones;
        seen[idx(start)] = true;
        bool has_lib = false;
        while (!stack.empty()) {
            Point cur = stack.back();
            stack.pop_back();
            stones.push_back(cur);
            for (Point n : neighbors(cur)) {
                if (next[idx(n)] == Color::Empty) has_lib = true;
                if (next[idx(n)] == color && !seen[idx(n)]) {
                    seen[idx(n)] = true;
                    stack.push_back(n);
                }
            }
        }
        return has_lib ? std::vector<Point>{} : stones;
    };

    for (Point n : neighbors(p)) {
        if (next[idx(n)] == opp) {
            for (Point dead : flood_no_libs(n)) next[idx(dead)] = Color::Empty;
        }
    }
    for (Point dead : flood_no_libs(p)) next[idx(dead)] = Color::Empty;
    return next;
}

std::optional<IllegalReason> NaiveBoard::legality(Point p, Color c) const {
    if (c != to_play_) return IllegalReason::WrongColor;
    if (!on_board(p.col, p.row)) return IllegalReason::OffBoard;
    if (at(p) != Color::Empty) return IllegalReason::Occupied;
    std::vector<Color> next = grid_after(p, c);
    if (next[idx(p)] == Color::Empty) return IllegalReason::Suicide;
    for (const auto& past : past_grids_) {
        if (past == next) return IllegalReason::SuperkoRepetition;
    }
    return std::nullopt;
}

int NaiveBoard::play(Point p, Color c) {
    if (auto r = legality(p, c)) throw IllegalMove(*r, Move::play(c, p));
    std::vector<Color> next = grid_after(p, c);
    int captured = 0;
    for (int i = 0; i < size_ * size_; ++i) {
        if (grid_[i] == opponent(c) && next[i] == Color::Empty) ++captured;
    }
    grid_ = std::move(next);
    captures_[color_index(c)] += captured;
    past_grids_.push_back(grid_);
    to_play_ = opponent(c);
    return captured;
}

void NaiveBoard::pass(Color c) {
    past_grids_.push_back(grid_);
    to_play_ = opponent(c);
}

ScoreResult NaiveBoard::score(double komi) const {
    // Union-find labeling over empty points.
    const int n = size_ * size_;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int r = 0; r < size_; ++r) {
        for (int c = 0; c < size_; ++c) {
            Point p{(uint8_t)c, (uint8_t)r};
            if (at(p) != Color::Empty) continue;
            for (Point nb : neighbors(p)) {
                if (at(nb) == Color::Empty) parent[find(idx(p))] = find(idx(nb));
            }
        }
    }
    std::vector<int> region_size(n, 0);
    std::vector<bool> touches_black(n, false), touches_white(n, false);
    for (int r = 0; r < size_; ++r) {
        for (int c = 0; c < size_; ++c) {
            Point p{(uint8_t)c, (uint8_t)r};
            if (at(p) != Color::Empty) continue;
            int root = find(idx(p));
            ++region_size[root];
            for (Point nb : neighbors(p)) {
                if (at(nb) == Color::Black) touches_black[root] = true;
                if (at(nb) == Color::White) touches_white[root] = true;
            }
        }
    }
    ScoreResult result;
    result.komi = komi;
    for (int i = 0; i < n; ++i) {
        Point p{(uint8_t)(i % size_), (uint8_t)(i / size_)};
        if (at(p) == Color::Black) ++result.black_area;
        if (at(p) == Color::White) ++result.white_area;
        if (at(p) == Color::Empty && find(i) == i) {
            if (touches_black[i] && !touches_white[i]) result.black_area += region_size[i];
            if (touches_white[i] && !touches_black[i]) result.white_area += region_size[i];
        }
    }
    const double diff = result.black_area - (result.white_area + komi);
    result.margin = diff < 0 ? -diff : diff;
    result.winner =
        diff > 0 ? GameWinner::Black : diff < 0 ? GameWinner::White : GameWinner::Draw;
    return result;
}

int random_playout_agreement(int size, int steps, uint64_t seed) {
    Position pos(size);
    NaiveBoard ref(size);
    Rng rng(seed);
    int played = 0;
    int placed[2] = {0, 0};

    for (int step = 0; step < steps; ++step) {
        const Color me = pos.to_play();
        if (ref.to_play() != me) throw std::logic_error("to_play diverged");

        std::vector<Point> legal;
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                Point p{(uint8_t)c, (uint8_t)r};
                const auto fast = pos.legality(Move::play(me, p));
                const auto slow = ref.legality(p, me);
                if (fast.has_value() != slow.has_value()) {
                    throw std::logic_error("legality disagreement at step " +
                                           std::to_string(step));
                }
                if (!fast) legal.push_back(p);
            }
        }
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                Point p{(uint8_t)c, (uint8_t)r};
                if (pos.at(p) != ref.at(p)) throw std::logic_error("grid disagreement");
                if (pos.at(p) == Color::Empty) continue;
                auto view = pos.chain_at(p);
                if (view.stones != ref.chain_points(p)) throw std::logic_error("chain stones");
                if (view.liberties != ref.chain_liberties(p)) {
                    throw std::logic_error("chain liberties");
                }
                if (pos.chain_liberties(p) == 0) throw std::logic_error("zero-liberty chain");
            }
        }
        auto sa = pos.score(7.5);
        auto sb = ref.score(7.5);
        if (sa.black_area != sb.black_area || sa.white_area != sb.white_area ||
            sa.winner != sb.winner) {
            throw std::logic_error("score disagreement");
        }
        for (Color c : {Color::Black, Color::White}) {
            if (pos.captures_by(c) != ref.captured_by(c)) {
                throw std::logic_error("capture count disagreement");
            }
            const int i = color_index(c);
            if (placed[i] - pos.captures_by(opponent(c)) != pos.stone_count(c)) {
                throw std::logic_error("stone bookkeeping broken");
            }
        }

        // Occasionally pass so scoring paths with mid-game passes get hit.
        if (legal.empty() || rng.next_below(100) == 0) {
            pos.apply(Move::pass(me));
            ref.pass(me);
            if (legal.empty() && pos.two_passes_ended()) {
                // Game exhausted; restart so every requested step checks a move.
                pos = Position(size);
                ref = NaiveBoard(size);
                placed[0] = placed[1] = 0;
            }
        } else {
            Point p = legal[rng.next_below(static_cast<uint32_t>(legal.size()))];
            pos.apply(Move::play(me, p));
            ref.play(p, me);
            ++placed[color_index(me)];
            ++played;
        }
    }
    return played;
}

} // namespace tengen::testing
