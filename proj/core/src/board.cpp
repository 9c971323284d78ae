#include "tengen/board.hpp"

#include "tengen/zobrist.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

namespace tengen {

std::string to_string(IllegalReason r) {
    switch (r) {
        case IllegalReason::Occupied: return "occupied";
        case IllegalReason::Suicide: return "suicide";
        case IllegalReason::SuperkoRepetition: return "superko repetition";
        case IllegalReason::WrongColor: return "wrong color";
        case IllegalReason::OffBoard: return "off board";
    }
    return "unknown";
}

Point transform_point(Point p, int g, int size) {
    assert(g >= 0 && g < 8);
    auto c = static_cast<int>(p.col);
    auto r = static_cast<int>(p.row);
    for (int i = 0; i < (g & 3); ++i) {
        int nc = size - 1 - r;
        int nr = c;
        c = nc;
        r = nr;
    }
    if (g >= 4) c = size - 1 - c;
    return Point{static_cast<uint8_t>(c), static_cast<uint8_t>(r)};
}

int compose_transforms(int g_after, int g_before) {
    // Identify the composite by its action on two generic probe points.
    constexpr int kProbeSize = 19;
    const Point a{1, 2};
    const Point b{5, 11};
    Point ia = transform_point(transform_point(a, g_before, kProbeSize), g_after, kProbeSize);
    Point ib = transform_point(transform_point(b, g_before, kProbeSize), g_after, kProbeSize);
    for (int g = 0; g < 8; ++g) {
        if (transform_point(a, g, kProbeSize) == ia && transform_point(b, g, kProbeSize) == ib) {
            return g;
        }
    }
    assert(false && "transform composition not closed");
    return 0;
}

int inverse_transform(int g) {
    for (int inv = 0; inv < 8; ++inv) {
        if (compose_transforms(inv, g) == 0) return inv;
    }
    assert(false);
    return 0;
}

int Position::LibertyMask::popcount(int words) const {
    int n = 0;
    for (int i = 0; i < words; ++i) n += std::popcount(w[i]);
    return n;
}

Position::Position(int size) {
    if (size < 2 || size > kMaxSize) {
        throw std::invalid_argument("board size must be in [2, 19]");
    }
    size_ = size;
    stride_ = size + 2;
    mask_words_ = (size * size + 63) / 64;
    grid_.assign(stride_ * stride_, static_cast<uint8_t>(Color::Wall));
    chain_id_.assign(stride_ * stride_, 0);
    next_stone_.assign(stride_ * stride_, 0);
    for (int r = 0; r < size_; ++r) {
        for (int c = 0; c < size_; ++c) {
            grid_[vertex(Point{(uint8_t)c, (uint8_t)r})] = static_cast<uint8_t>(Color::Empty);
        }
    }
    hash_history_.push_back(board_hash_);
}

Position Position::from_setup(int size, const std::vector<Point>& black,
                              const std::vector<Point>& white, Color to_play) {
    Position p(size);
    p.hash_history_.clear();
    for (Point pt : black) p.place_setup_stone(pt, Color::Black);
    for (Point pt : white) p.place_setup_stone(pt, Color::White);
    p.to_play_ = to_play;
    p.hash_history_.push_back(p.board_hash_);
    return p;
}

void Position::set_to_play(Color c) {
    assert(c == Color::Black || c == Color::White);
    to_play_ = c;
}

uint16_t Position::allocate_chain() {
    if (!free_chains_.empty()) {
        uint16_t id = free_chains_.back();
        free_chains_.pop_back();
        chains_[id] = Chain{};
        chains_[id].in_use = true;
        return id;
    }
    chains_.push_back(Chain{});
    chains_.back().in_use = true;
    return static_cast<uint16_t>(chains_.size() - 1);
}

void Position::release_chain(uint16_t id) {
    chains_[id].in_use = false;
    free_chains_.push_back(id);
}

void Position::place_setup_stone(Point p, Color c) {
    if (!is_on_board(p)) throw IllegalMove(IllegalReason::OffBoard, Move::play(c, p));
    if (at(p) != Color::Empty) throw IllegalMove(IllegalReason::Occupied, Move::play(c, p));
    if (placement_is_suicide(p, c)) throw IllegalMove(IllegalReason::Suicide, Move::play(c, p));
    apply_play_unchecked(p, c);
    (c == Color::Black ? setup_black_ : setup_white_).push_back(p);
}

bool Position::placement_is_suicide(Point pt, Color me) const {
    const int v = vertex(pt);
    const Color opp = opponent(me);
    const std::array<int, 4> off{-stride_, -1, 1, stride_};
    const int pt_bit = mask_bit(v);
    for (int d : off) {
        const int nv = v + d;
        const auto nc = static_cast<Color>(grid_[nv]);
        if (nc == Color::Empty) return false;
        if (nc == me) {
            if (chains_[chain_id_[nv] - 1].libs.popcount(mask_words_) >= 2) return false;
        } else if (nc == opp) {
            const Chain& ch = chains_[chain_id_[nv] - 1];
            if (ch.libs.popcount(mask_words_) == 1 && ch.libs.test(pt_bit)) return false;
        }
    }
    return true;
}

namespace {
inline uint64_t stone_hash(Point p, Color c) {
    return zobrist::stone_key(p.row, p.col, color_index(c));
}
} // namespace

// Places a stone, merging friendly chains and removing dead opponent
// chains. The caller guarantees the point is empty and the move is not
// suicide. Updates only grid/chain/hash state, never move history.
void Position::apply_play_unchecked(Point pt, Color me) {
    const int v = vertex(pt);
    const Color opp = opponent(me);
    const std::array<int, 4> off{-stride_, -1, 1, stride_};

    // Distinct adjacent chains, by color.
    std::array<uint16_t, 4> own{};
    std::array<uint16_t, 4> dead{};
    int own_n = 0, dead_n = 0;
    const int pt_bit = mask_bit(v);

    for (int d : off) {
        const int nv = v + d;
        const auto nc = static_cast<Color>(grid_[nv]);
        if (nc != Color::Black && nc != Color::White) continue;
        const uint16_t id = chain_id_[nv] - 1;
        Chain& ch = chains_[id];
        if (!ch.libs.test(pt_bit)) continue; // already handled via another neighbor
        ch.libs.clear(pt_bit);
        if (nc == me) {
            own[own_n++] = id;
        } else if (ch.libs.popcount(mask_words_) == 0) {
            dead[dead_n++] = id;
        }
    }

    grid_[v] = static_cast<uint8_t>(me);
    board_hash_ ^= stone_hash(pt, me);
    ++stone_totals_[color_index(me)];

    // Merge the placed stone into one chain.
    uint16_t base;
    if (own_n == 0) {
        base = allocate_chain();
        chains_[base].head = static_cast<uint16_t>(v);
        chains_[base].color = static_cast<uint8_t>(me);
        chains_[base].stones = 0;
        next_stone_[v] = static_cast<uint16_t>(v);
    } else {
        base = own[0];
        for (int i = 1; i < own_n; ++i) {
            if (chains_[own[i]].stones > chains_[base].stones) base = own[i];
        }
        for (int i = 0; i < own_n; ++i) {
            const uint16_t id = own[i];
            if (id == base) continue;
            Chain& ch = chains_[id];
            int v2 = ch.head;
            do {
                chain_id_[v2] = base + 1;
                v2 = next_stone_[v2];
            } while (v2 != ch.head);
            std::swap(next_stone_[chains_[base].head], next_stone_[ch.head]);
            chains_[base].stones += ch.stones;
            chains_[base].libs.merge(ch.libs, mask_words_);
            release_chain(id);
        }
        // Thread the new stone into the circular list.
        next_stone_[v] = next_stone_[chains_[base].head];
        next_stone_[chains_[base].head] = static_cast<uint16_t>(v);
    }
    chain_id_[v] = base + 1;
    chains_[base].stones += 1;
    for (int d : off) {
        if (grid_[v + d] == static_cast<uint8_t>(Color::Empty)) {
            chains_[base].libs.set(mask_bit(v + d));
        }
    }

    // Remove captured chains.
    int removed = 0;
    for (int i = 0; i < dead_n; ++i) {
        Chain& ch = chains_[dead[i]];
        std::array<uint16_t, kMaxSize * kMaxSize> buf;
        int n = 0;
        int v2 = ch.head;
        do {
            buf[n++] = static_cast<uint16_t>(v2);
            v2 = next_stone_[v2];
        } while (v2 != ch.head);
        for (int s = 0; s < n; ++s) {
            const int sv = buf[s];
            grid_[sv] = static_cast<uint8_t>(Color::Empty);
            chain_id_[sv] = 0;
            board_hash_ ^= stone_hash(point_of(sv), opp);
            const int sbit = mask_bit(sv);
            for (int d : off) {
                const int nv = sv + d;
                if (grid_[nv] == static_cast<uint8_t>(me)) {
                    chains_[chain_id_[nv] - 1].libs.set(sbit);
                }
            }
        }
        removed += n;
        release_chain(dead[i]);
    }
    captures_[color_index(me)] += removed;
    stone_totals_[color_index(opp)] -= removed;
    assert(chains_[base].libs.popcount(mask_words_) > 0);
}

uint64_t Position::hash_after_play(Point pt, Color me) const {
    uint64_t h = board_hash_ ^ stone_hash(pt, me);
    const int v = vertex(pt);
    const Color opp = opponent(me);
    const std::array<int, 4> off{-stride_, -1, 1, stride_};
    std::array<uint16_t, 4> seen{};
    int seen_n = 0;
    const int pt_bit = mask_bit(v);
    for (int d : off) {
        const int nv = v + d;
        if (grid_[nv] != static_cast<uint8_t>(opp)) continue;
        const uint16_t id = chain_id_[nv] - 1;
        bool dup = false;
        for (int i = 0; i < seen_n; ++i) dup |= seen[i] == id;
        if (dup) continue;
        seen[seen_n++] = id;
        const Chain& ch = chains_[id];
        if (ch.libs.popcount(mask_words_) == 1 && ch.libs.test(pt_bit)) {
            int v2 = ch.head;
            do {
                h ^= stone_hash(point_of(v2), opp);
                v2 = next_stone_[v2];
            } while (v2 != ch.head);
        }
    }
    return h;
}

bool Position::hash_seen(uint64_t h) const {
    for (auto it = hash_history_.rbegin(); it != hash_history_.rend(); ++it) {
        if (*it == h) return true;
    }
    return false;
}

std::optional<IllegalReason> Position::legality(const Move& m) const {
    if (m.is_pass()) return std::nullopt;
    if (m.color != to_play_) return IllegalReason::WrongColor;
    if (!is_on_board(m.point)) return IllegalReason::OffBoard;
    const int v = vertex(m.point);
    if (grid_[v] != static_cast<uint8_t>(Color::Empty)) return IllegalReason::Occupied;

    const Color me = m.color;
    const Color opp = opponent(me);
    const std::array<int, 4> off{-stride_, -1, 1, stride_};
    const int pt_bit = mask_bit(v);

    bool captures = false;
    for (int d : off) {
        const int nv = v + d;
        if (grid_[nv] != static_cast<uint8_t>(opp)) continue;
        const Chain& ch = chains_[chain_id_[nv] - 1];
        if (ch.libs.popcount(mask_words_) == 1 && ch.libs.test(pt_bit)) captures = true;
    }
    if (!captures && placement_is_suicide(m.point, me)) return IllegalReason::Suicide;

    // Positional superko: the successor grid may not repeat any earlier one.
    // Only capturing moves can shrink the stone set, but any play could in
    // principle recreate a past grid, so always check.
    const uint64_t h = captures ? hash_after_play(m.point, me)
                                : board_hash_ ^ stone_hash(m.point, me);
    if (hash_seen(h)) return IllegalReason::SuperkoRepetition;
    return std::nullopt;
}

Position Position::play(const Move& m) const {
    Position next(*this);
    next.apply(m);
    return next;
}

void Position::apply(const Move& m) {
    if (auto reason = legality(m)) throw IllegalMove(*reason, m);
    if (!m.is_pass()) apply_play_unchecked(m.point, m.color);
    to_play_ = opponent(m.color);
    history_.push_back(m);
    hash_history_.push_back(board_hash_);
}

Position::ChainView Position::chain_at(Point p) const {
    if (!is_on_board(p) || at(p) == Color::Empty) {
        throw EmptyPoint("chain_at: no stone at point");
    }
    const Chain& ch = chains_[chain_index(vertex(p)) - 1];
    ChainView view;
    view.stones.reserve(ch.stones);
    int v = ch.head;
    do {
        view.stones.push_back(point_of(v));
        v = next_stone_[v];
    } while (v != ch.head);
    for (int bit = 0; bit < size_ * size_; ++bit) {
        if (ch.libs.test(bit)) view.liberties.push_back(point_from_index(bit, size_));
    }
    auto point_less = [](Point a, Point b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    };
    std::sort(view.stones.begin(), view.stones.end(), point_less);
    return view;
}

int Position::chain_size(Point p) const {
    if (!is_on_board(p) || at(p) == Color::Empty) throw EmptyPoint("chain_size: no stone at point");
    return chains_[chain_index(vertex(p)) - 1].stones;
}

int Position::chain_liberties(Point p) const {
    if (!is_on_board(p) || at(p) == Color::Empty) {
        throw EmptyPoint("chain_liberties: no stone at point");
    }
    return chains_[chain_index(vertex(p)) - 1].libs.popcount(mask_words_);
}

int Position::liberties_after(Point pt) const {
    if (!is_legal(Move::play(to_play_, pt))) throw IllegalPoint("liberties_after: illegal point");
    const int v = vertex(pt);
    const Color me = to_play_;
    const Color opp = opponent(me);
    const std::array<int, 4> off{-stride_, -1, 1, stride_};
    const int pt_bit = mask_bit(v);

    LibertyMask merged{};
    std::array<uint16_t, 4> own{};
    int own_n = 0;
    std::array<uint16_t, 4> dead{};
    int dead_n = 0;
    for (int d : off) {
        const int nv = v + d;
        const auto nc = static_cast<Color>(grid_[nv]);
        if (nc == Color::Empty) {
            merged.set(mask_bit(nv));
        } else if (nc == me) {
            const uint16_t id = chain_id_[nv] - 1;
            bool dup = false;
            for (int i = 0; i < own_n; ++i) dup |= own[i] == id;
            if (!dup) {
                own[own_n++] = id;
                merged.merge(chains_[id].libs, mask_words_);
            }
        } else if (nc == opp) {
            const uint16_t id = chain_id_[nv] - 1;
            const Chain& ch = chains_[id];
            if (ch.libs.popcount(mask_words_) == 1 && ch.libs.test(pt_bit)) {
                bool dup = false;
                for (int i = 0; i < dead_n; ++i) dup |= dead[i] == id;
                if (!dup) dead[dead_n++] = id;
            }
        }
    }
    merged.clear(pt_bit);

    // Vacated capture points adjacent to the merged chain become liberties.
    for (int i = 0; i < dead_n; ++i) {
        const Chain& ch = chains_[dead[i]];
        int v2 = ch.head;
        do {
            for (int d : off) {
                const int nv = v2 + d;
                if (nv == v) {
                    merged.set(mask_bit(v2));
                    break;
                }
                if (grid_[nv] == static_cast<uint8_t>(me)) {
                    const uint16_t id = chain_id_[nv] - 1;
                    bool mine = false;
                    for (int k = 0; k < own_n; ++k) mine |= own[k] == id;
                    if (mine) {
                        merged.set(mask_bit(v2));
                        break;
                    }
                }
            }
            v2 = next_stone_[v2];
        } while (v2 != ch.head);
    }
    return merged.popcount(mask_words_);
}

int Position::capture_size(Point pt) const {
    if (!is_legal(Move::play(to_play_, pt))) throw IllegalPoint("capture_size: illegal point");
    const int v = vertex(pt);
    const Color opp = opponent(to_play_);
    const std::array<int, 4> off{-stride_, -1, 1, stride_};
    const int pt_bit = mask_bit(v);
    std::array<uint16_t, 4> seen{};
    int seen_n = 0;
    int total = 0;
    for (int d : off) {
        const int nv = v + d;
        if (grid_[nv] != static_cast<uint8_t>(opp)) continue;
        const uint16_t id = chain_id_[nv] - 1;
        bool dup = false;
        for (int i = 0; i < seen_n; ++i) dup |= seen[i] == id;
        if (dup) continue;
        seen[seen_n++] = id;
        const Chain& ch = chains_[id];
        if (ch.libs.popcount(mask_words_) == 1 && ch.libs.test(pt_bit)) total += ch.stones;
    }
    return total;
}

ScoreResult Position::score(double komi) const {
    ScoreResult result;
    result.komi = komi;
    std::vector<uint8_t> visited(grid_.size(), 0);
    std::vector<int> stack;
    stack.reserve(size_ * size_);
    const std::array<int, 4> off{-stride_, -1, 1, stride_};

    int black = stone_totals_[0];
    int white = stone_totals_[1];
    for (int r = 0; r < size_; ++r) {
        for (int c = 0; c < size_; ++c) {
            const int v = vertex(Point{(uint8_t)c, (uint8_t)r});
            if (grid_[v] != static_cast<uint8_t>(Color::Empty) || visited[v]) continue;
            // Flood the empty region, recording which colors border it.
            bool sees_black = false, sees_white = false;
            int area = 0;
            stack.clear();
            stack.push_back(v);
            visited[v] = 1;
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                ++area;
                for (int d : off) {
                    const int nv = cur + d;
                    const auto nc = static_cast<Color>(grid_[nv]);
                    if (nc == Color::Empty && !visited[nv]) {
                        visited[nv] = 1;
                        stack.push_back(nv);
                    } else if (nc == Color::Black) {
                        sees_black = true;
                    } else if (nc == Color::White) {
                        sees_white = true;
                    }
                }
            }
            if (sees_black && !sees_white) black += area;
            if (sees_white && !sees_black) white += area;
        }
    }
    result.black_area = black;
    result.white_area = white;
    const double diff = black - (white + komi);
    result.margin = diff < 0 ? -diff : diff;
    result.winner = diff > 0 ? GameWinner::Black : diff < 0 ? GameWinner::White : GameWinner::Draw;
    return result;
}

Position Position::transformed(int g) const {
    assert(g >= 0 && g < 8);
    // Rebuilding through replay keeps every cache and the superko history
    // exactly consistent with the mapped move sequence.
    std::vector<Point> black, white;
    black.reserve(setup_black_.size());
    white.reserve(setup_white_.size());
    for (Point p : setup_black_) black.push_back(transform_point(p, g, size_));
    for (Point p : setup_white_) white.push_back(transform_point(p, g, size_));

    Color initial_to_play = Color::Black;
    if (!history_.empty()) {
        initial_to_play = history_.front().color;
    } else {
        initial_to_play = to_play_;
    }
    Position out = from_setup(size_, black, white, initial_to_play);
    for (const Move& m : history_) {
        if (m.is_pass()) {
            out.set_to_play(m.color);
            out.apply(m);
        } else {
            out.set_to_play(m.color);
            out.apply(Move::play(m.color, transform_point(m.point, g, size_)));
        }
    }
    out.to_play_ = to_play_;
    if (recent_override_) {
        std::vector<RecentPlay> mapped;
        mapped.reserve(recent_override_->size());
        for (const RecentPlay& rp : *recent_override_) {
            mapped.push_back(RecentPlay{transform_point(rp.point, g, size_), rp.color});
        }
        out.recent_override_ = std::move(mapped);
    }
    return out;
}

uint64_t Position::position_hash() const {
    return board_hash_ ^ zobrist::side_key(color_index(to_play_));
}

bool Position::two_passes_ended() const {
    const auto n = history_.size();
    return n >= 2 && history_[n - 1].is_pass() && history_[n - 2].is_pass();
}

std::vector<Position::RecentPlay> Position::recent_plays(int max_count) const {
    std::vector<RecentPlay> out;
    for (auto it = history_.rbegin(); it != history_.rend() && (int)out.size() < max_count; ++it) {
        if (!it->is_pass()) out.push_back(RecentPlay{it->point, it->color});
    }
    if (recent_override_) {
        for (const RecentPlay& rp : *recent_override_) {
            if ((int)out.size() >= max_count) break;
            out.push_back(rp);
        }
    }
    return out;
}

void Position::set_recent_plays(std::vector<RecentPlay> plays) {
    recent_override_ = std::move(plays);
}

bool Position::operator==(const Position& other) const {
    return size_ == other.size_ && to_play_ == other.to_play_ && grid_ == other.grid_ &&
           history_ == other.history_ && hash_history_ == other.hash_history_ &&
           captures_ == other.captures_ && setup_black_ == other.setup_black_ &&
           setup_white_ == other.setup_white_ && recent_override_ == other.recent_override_;
}

std::string Position::to_string() const {
    static const char cols[] = "ABCDEFGHJKLMNOPQRST"; // no I, GTP convention
    std::ostringstream os;
    os << "   ";
    for (int c = 0; c < size_; ++c) os << cols[c] << ' ';
    os << '\n';
    for (int r = 0; r < size_; ++r) {
        const int shown = size_ - r;
        os << (shown < 10 ? " " : "") << shown << ' ';
        for (int c = 0; c < size_; ++c) {
            const Color col = at(Point{(uint8_t)c, (uint8_t)r});
            os << (col == Color::Black ? 'X' : col == Color::White ? 'O' : '.') << ' ';
        }
        os << (shown < 10 ? " " : "") << shown << '\n';
    }
    os << "   ";
    for (int c = 0; c < size_; ++c) os << cols[c] << ' ';
    os << '\n';
    return os.str();
}

void Position::rebuild_chains() {
    std::fill(chain_id_.begin(), chain_id_.end(), 0);
    chains_.clear();
    free_chains_.clear();
    const std::array<int, 4> off{-stride_, -1, 1, stride_};
    std::vector<int> stack;
    for (int r = 0; r < size_; ++r) {
        for (int c = 0; c < size_; ++c) {
            const int v = vertex(Point{(uint8_t)c, (uint8_t)r});
            const auto col = static_cast<Color>(grid_[v]);
            if ((col != Color::Black && col != Color::White) || chain_id_[v] != 0) continue;
            const uint16_t id = allocate_chain();
            Chain& ch = chains_[id];
            ch.color = static_cast<uint8_t>(col);
            ch.head = static_cast<uint16_t>(v);
            stack.assign(1, v);
            chain_id_[v] = id + 1;
            next_stone_[v] = static_cast<uint16_t>(v);
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                ++ch.stones;
                for (int d : off) {
                    const int nv = cur + d;
                    const auto nc = static_cast<Color>(grid_[nv]);
                    if (nc == Color::Empty) {
                        ch.libs.set(mask_bit(nv));
                    } else if (nc == col && chain_id_[nv] == 0) {
                        chain_id_[nv] = id + 1;
                        next_stone_[nv] = next_stone_[ch.head];
                        next_stone_[ch.head] = static_cast<uint16_t>(nv);
                        stack.push_back(nv);
                    }
                }
            }
        }
    }
}

} // namespace tengen
