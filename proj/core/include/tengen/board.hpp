#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tengen {

enum class Color : uint8_t { Empty = 0, Black = 1, White = 2, Wall = 3 };

inline Color opponent(Color c) {
    return c == Color::Black ? Color::White : Color::Black;
}

inline int color_index(Color c) { // Black 0, White 1
    return c == Color::Black ? 0 : 1;
}

struct Point {
    uint8_t col = 0;
    uint8_t row = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Move {
    enum class Kind : uint8_t { Play, Pass };

    Kind kind = Kind::Pass;
    Color color = Color::Black;
    Point point{};

    static Move play(Color c, Point p) { return Move{Kind::Play, c, p}; }
    static Move pass(Color c) { return Move{Kind::Pass, c, Point{}}; }

    bool is_pass() const { return kind == Kind::Pass; }

    friend bool operator==(const Move& a, const Move& b) {
        if (a.kind != b.kind || a.color != b.color) return false;
        return a.kind == Kind::Pass || a.point == b.point;
    }
};

enum class IllegalReason : uint8_t {
    Occupied,
    Suicide,
    SuperkoRepetition,
    WrongColor,
    OffBoard,
};

std::string to_string(IllegalReason r);

class IllegalMove : public std::runtime_error {
public:
    IllegalMove(IllegalReason r, Move m)
        : std::runtime_error("illegal move: " + to_string(r)), reason(r), move(m) {}

    IllegalReason reason;
    Move move;
};

struct EmptyPoint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IllegalPoint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class GameWinner : uint8_t { Black, White, Draw };

struct ScoreResult {
    int black_area = 0;
    int white_area = 0;
    double komi = 0.0;
    GameWinner winner = GameWinner::Draw;
    double margin = 0.0; // |black_area - white_area - komi|
};

// Dihedral group D4 indexed 0..7: g in 0..3 rotates by 90 degrees g times
// with (c,r) -> (N-1-r, c); g in 4..7 rotates (g-4) times then mirrors
// columns (c,r) -> (N-1-c, r).
Point transform_point(Point p, int g, int size);
int compose_transforms(int g_after, int g_before); // T[result] = T[g_after] . T[g_before]
int inverse_transform(int g);

// Full Go game state with incrementally maintained chains (union via stone
// linked lists, exact liberty bitmasks). Play is value-semantic: `play`
// returns the successor; `apply` is the in-place variant used by search
// and replay loops. Legality is Tromp-Taylor with suicide forbidden and
// positional superko enforced against the whole-board hash history.
class Position {
public:
    static constexpr int kMaxSize = 19;

    explicit Position(int size = 19);

    // A position assembled from placed stones rather than played moves
    // (handicap setups, dataset snapshots).
    static Position from_setup(int size, const std::vector<Point>& black,
                               const std::vector<Point>& white, Color to_play);

    int size() const { return size_; }
    Color to_play() const { return to_play_; }
    void set_to_play(Color c);

    bool is_on_board(Point p) const { return p.col < size_ && p.row < size_; }
    Color at(Point p) const { return static_cast<Color>(grid_[vertex(p)]); }
    int stone_count(Color c) const { return stone_totals_[color_index(c)]; }

    // nullopt when the move is legal.
    std::optional<IllegalReason> legality(const Move& m) const;
    bool is_legal(const Move& m) const { return !legality(m).has_value(); }

    Position play(const Move& m) const;
    void apply(const Move& m); // throws IllegalMove like play

    struct ChainView {
        std::vector<Point> stones;
        std::vector<Point> liberties;
    };
    ChainView chain_at(Point p) const; // throws EmptyPoint
    int chain_size(Point p) const;     // cheap accessors, same precondition
    int chain_liberties(Point p) const;

    // Liberties of the chain containing pt after to_play plays there,
    // counting points vacated by captures. Throws IllegalPoint.
    int liberties_after(Point pt) const;
    // Opponent stones removed by to_play playing pt. Throws IllegalPoint.
    int capture_size(Point pt) const;

    ScoreResult score(double komi) const; // Tromp-Taylor area scoring

    Position transformed(int g) const;

    uint64_t board_hash() const { return board_hash_; } // stones only
    uint64_t position_hash() const;                     // stones + side to move

    const std::vector<Move>& history() const { return history_; }
    const std::vector<uint64_t>& hash_history() const { return hash_history_; }
    int captures_by(Color c) const { return captures_[color_index(c)]; }

    bool two_passes_ended() const;

    struct RecentPlay {
        Point point;
        Color color;
        friend bool operator==(const RecentPlay&, const RecentPlay&) = default;
    };
    // Most recent first. Falls back to the snapshot-supplied list when the
    // position was reconstructed without full history.
    std::vector<RecentPlay> recent_plays(int max_count) const;
    void set_recent_plays(std::vector<RecentPlay> plays);

    bool operator==(const Position& other) const;

    std::string to_string() const;

    // Recomputes every chain from the grid alone; test oracles compare the
    // result against the incremental state.
    void rebuild_chains();

private:
    struct LibertyMask {
        std::array<uint64_t, 6> w{};

        void set(int bit) { w[bit >> 6] |= uint64_t{1} << (bit & 63); }
        void clear(int bit) { w[bit >> 6] &= ~(uint64_t{1} << (bit & 63)); }
        bool test(int bit) const { return (w[bit >> 6] >> (bit & 63)) & 1; }
        void clear_all() { w.fill(0); }
        void merge(const LibertyMask& o, int words) {
            for (int i = 0; i < words; ++i) w[i] |= o.w[i];
        }
        int popcount(int words) const;
    };

    struct Chain {
        LibertyMask libs;
        uint16_t head = 0;   // any vertex of the chain
        uint16_t stones = 0;
        uint8_t color = 0;
        bool in_use = false;
    };

    int vertex(Point p) const { return (p.row + 1) * stride_ + (p.col + 1); }
    Point point_of(int v) const {
        return Point{static_cast<uint8_t>(v % stride_ - 1), static_cast<uint8_t>(v / stride_ - 1)};
    }
    int mask_bit(int v) const {
        return (v / stride_ - 1) * size_ + (v % stride_ - 1);
    }
    uint16_t chain_index(int v) const { return chain_id_[v]; } // 0 = none

    uint16_t allocate_chain();
    void release_chain(uint16_t id);
    void place_setup_stone(Point p, Color c);
    bool placement_is_suicide(Point pt, Color me) const;
    void apply_play_unchecked(Point pt, Color me);
    uint64_t hash_after_play(Point pt, Color me) const;
    bool hash_seen(uint64_t h) const;

    int size_ = 0;
    int stride_ = 0;
    int mask_words_ = 0;
    Color to_play_ = Color::Black;
    std::vector<uint8_t> grid_;       // padded (size+2)^2, Wall border
    std::vector<uint16_t> chain_id_;  // padded vertex -> chain index + 1
    std::vector<uint16_t> next_stone_; // circular list threading each chain
    std::vector<Chain> chains_;
    std::vector<uint16_t> free_chains_;
    uint64_t board_hash_ = 0;
    std::vector<Move> history_;
    std::vector<uint64_t> hash_history_; // initial position + after every move
    std::array<int, 2> captures_{0, 0};
    std::array<int, 2> stone_totals_{0, 0};
    std::vector<Point> setup_black_;
    std::vector<Point> setup_white_;
    std::optional<std::vector<RecentPlay>> recent_override_;
};

inline int point_index(Point p, int size) { return p.row * size + p.col; }
inline Point point_from_index(int idx, int size) {
    return Point{static_cast<uint8_t>(idx % size), static_cast<uint8_t>(idx / size)};
}

} // namespace tengen
