#pragma once

#include "tengen/board.hpp"
#include "tengen/rng.hpp"
#include "tengen/sgf.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tengen {

// One supervised example: a compact position snapshot, the expert's move
// and the mover's rank. The snapshot keeps the grid, side to move and the
// last five play points (with colors), which is everything feature
// extraction needs.
struct TrainingExample {
    struct RecentMove {
        uint16_t point_index; // row * size + col
        Color color;
        friend bool operator==(const RecentMove&, const RecentMove&) = default;
    };

    uint8_t board_size = 19;
    Color to_play = Color::Black;
    std::vector<uint8_t> grid; // row-major Color values, size*size entries
    std::vector<RecentMove> recent; // most recent first, at most 5
    uint16_t expert_index = 0;
    Rank rank;

    static TrainingExample from_position(const Position& pos, Point expert, Rank rank);
    Position to_position() const;
    Point expert_point() const { return point_from_index(expert_index, board_size); }

    TrainingExample transformed(int g) const;

    friend bool operator==(const TrainingExample&, const TrainingExample&) = default;
};

// Transforms position and label by the same uniformly drawn group element.
TrainingExample sample_symmetry(const TrainingExample& e, Rng& rng);

struct ReplayStats {
    int examples = 0;
    int illegal_moves = 0; // nonzero means the game was truncated there
};

// One example per non-pass move, labeled with the mover's rank. Replay stops
// at the first illegal recorded move; prior examples are kept.
std::vector<TrainingExample> game_to_examples(const SgfGame& game, ReplayStats* stats = nullptr);

// Deterministic game-level split: every game's examples land wholly in one
// side. Returns game indices.
struct GameSplit {
    std::vector<uint32_t> train;
    std::vector<uint32_t> test;
};
GameSplit split_by_game(size_t game_count, double test_fraction, uint64_t seed);

struct DatasetManifest {
    uint32_t format_version = 1;
    int board_size = 19;
    std::string split; // "train" | "test"
    uint64_t record_count = 0;
    uint64_t game_count = 0;
    std::map<std::string, uint64_t> rank_histogram;

    void save(const std::string& path) const;
    static DatasetManifest load(const std::string& path);
};

struct CorruptRecord : std::runtime_error {
    CorruptRecord(const std::string& msg, uint64_t offset)
        : std::runtime_error(msg + " (offset " + std::to_string(offset) + ")"),
          offset(offset) {}
    uint64_t offset;
};

struct VersionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Length-prefixed little-endian records behind a fixed-size header. The
// manifest sidecar (path + ".manifest") carries the counts.
class RecordWriter {
public:
    RecordWriter(const std::string& path, int board_size, std::string split_tag);
    ~RecordWriter();

    RecordWriter(const RecordWriter&) = delete;
    RecordWriter& operator=(const RecordWriter&) = delete;

    void add(const TrainingExample& e);
    void count_game() { ++manifest_.game_count; }

    // Flushes, writes the manifest sidecar and returns it.
    DatasetManifest finish();

private:
    std::FILE* file_ = nullptr;
    std::string path_;
    DatasetManifest manifest_;
    bool finished_ = false;
};

class RecordReader {
public:
    explicit RecordReader(const std::string& path);
    ~RecordReader();

    RecordReader(const RecordReader&) = delete;
    RecordReader& operator=(const RecordReader&) = delete;

    int board_size() const { return board_size_; }

    // Streams one record; nullopt at clean end of file. Throws CorruptRecord
    // at the first damaged byte (prior records have already been yielded).
    std::optional<TrainingExample> next();

    // Rewinds to the first record.
    void reset();

private:
    std::FILE* file_ = nullptr;
    int board_size_ = 0;
    uint64_t data_start_ = 0;
};

// Convenience: loads a whole record file into memory.
std::vector<TrainingExample> read_all_records(const std::string& path);

} // namespace tengen
