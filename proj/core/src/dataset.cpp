#include "tengen/dataset.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <fstream>

namespace tengen {

namespace {

constexpr char kMagic[4] = {'T', 'G', 'D', 'T'};
constexpr uint16_t kFormatVersion = 1;

int8_t encode_rank(Rank r) {
    switch (r.kind) {
        case Rank::Kind::Dan: return static_cast<int8_t>(r.value);
        case Rank::Kind::Kyu: return static_cast<int8_t>(-r.value);
        case Rank::Kind::Pro: return static_cast<int8_t>(100 + r.value);
        case Rank::Kind::Unknown: break;
    }
    return 0;
}

Rank decode_rank(int8_t v) {
    if (v >= 1 && v <= 9) return Rank::dan(v);
    if (v <= -1 && v >= -30) return Rank::kyu(-v);
    if (v >= 101 && v <= 109) return Rank::pro(v - 100);
    return Rank::unknown();
}

void put_u16(std::vector<uint8_t>& buf, uint16_t v) {
    buf.push_back(static_cast<uint8_t>(v & 0xff));
    buf.push_back(static_cast<uint8_t>(v >> 8));
}

uint16_t get_u16(const uint8_t* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

} // namespace

TrainingExample TrainingExample::from_position(const Position& pos, Point expert, Rank rank) {
    TrainingExample e;
    e.board_size = static_cast<uint8_t>(pos.size());
    e.to_play = pos.to_play();
    e.grid.resize(pos.size() * pos.size());
    for (int r = 0; r < pos.size(); ++r) {
        for (int c = 0; c < pos.size(); ++c) {
            Point p{(uint8_t)c, (uint8_t)r};
            e.grid[point_index(p, pos.size())] = static_cast<uint8_t>(pos.at(p));
        }
    }
    for (const auto& rp : pos.recent_plays(5)) {
        e.recent.push_back(
            RecentMove{static_cast<uint16_t>(point_index(rp.point, pos.size())), rp.color});
    }
    e.expert_index = static_cast<uint16_t>(point_index(expert, pos.size()));
    e.rank = rank;
    return e;
}

Position TrainingExample::to_position() const {
    std::vector<Point> black, white;
    for (int i = 0; i < (int)grid.size(); ++i) {
        if (grid[i] == static_cast<uint8_t>(Color::Black)) {
            black.push_back(point_from_index(i, board_size));
        } else if (grid[i] == static_cast<uint8_t>(Color::White)) {
            white.push_back(point_from_index(i, board_size));
        }
    }
    Position pos = Position::from_setup(board_size, black, white, to_play);
    std::vector<Position::RecentPlay> plays;
    plays.reserve(recent.size());
    for (const auto& rm : recent) {
        plays.push_back(Position::RecentPlay{point_from_index(rm.point_index, board_size), rm.color});
    }
    pos.set_recent_plays(std::move(plays));
    return pos;
}

TrainingExample TrainingExample::transformed(int g) const {
    TrainingExample out = *this;
    const int n = board_size;
    for (int i = 0; i < (int)grid.size(); ++i) {
        const int j = point_index(transform_point(point_from_index(i, n), g, n), n);
        out.grid[j] = grid[i];
    }
    for (auto& rm : out.recent) {
        rm.point_index = static_cast<uint16_t>(
            point_index(transform_point(point_from_index(rm.point_index, n), g, n), n));
    }
    out.expert_index = static_cast<uint16_t>(
        point_index(transform_point(point_from_index(expert_index, n), g, n), n));
    return out;
}

TrainingExample sample_symmetry(const TrainingExample& e, Rng& rng) {
    const int g = static_cast<int>(rng.next_below(8));
    return g == 0 ? e : e.transformed(g);
}

std::vector<TrainingExample> game_to_examples(const SgfGame& game, ReplayStats* stats) {
    std::vector<TrainingExample> out;
    ReplayStats local;
    Color first = game.moves.empty() ? Color::Black : game.moves.front().color;
    Position pos = Position::from_setup(game.board_size, game.setup_black, game.setup_white, first);
    for (const Move& m : game.moves) {
        // Real corpora occasionally contain consecutive same-color moves;
        // replay follows the record rather than strict alternation.
        pos.set_to_play(m.color);
        if (!pos.is_legal(m)) {
            ++local.illegal_moves;
            break;
        }
        if (!m.is_pass()) {
            out.push_back(TrainingExample::from_position(pos, m.point, game.rank_of(m.color)));
        }
        pos.apply(m);
    }
    local.examples = static_cast<int>(out.size());
    if (stats) *stats = local;
    return out;
}

GameSplit split_by_game(size_t game_count, double test_fraction, uint64_t seed) {
    assert(test_fraction > 0.0 && test_fraction < 1.0);
    std::vector<uint32_t> order(game_count);
    for (size_t i = 0; i < game_count; ++i) order[i] = static_cast<uint32_t>(i);
    Rng rng(seed);
    for (size_t i = game_count; i > 1; --i) {
        const size_t j = rng.next_below(static_cast<uint32_t>(i));
        std::swap(order[i - 1], order[j]);
    }
    const auto test_n = static_cast<size_t>(test_fraction * static_cast<double>(game_count) + 0.5);
    GameSplit split;
    split.test.assign(order.begin(), order.begin() + test_n);
    split.train.assign(order.begin() + test_n, order.end());
    std::sort(split.test.begin(), split.test.end());
    std::sort(split.train.begin(), split.train.end());
    return split;
}

void DatasetManifest::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest " + path);
    out << "format_version=" << format_version << '\n';
    out << "board_size=" << board_size << '\n';
    out << "split=" << split << '\n';
    out << "records=" << record_count << '\n';
    out << "games=" << game_count << '\n';
    for (const auto& [rank, count] : rank_histogram) {
        out << "rank." << rank << '=' << count << '\n';
    }
}

DatasetManifest DatasetManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest " + path);
    DatasetManifest m;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "format_version") m.format_version = std::stoul(value);
        else if (key == "board_size") m.board_size = std::stoi(value);
        else if (key == "split") m.split = value;
        else if (key == "records") m.record_count = std::stoull(value);
        else if (key == "games") m.game_count = std::stoull(value);
        else if (key.rfind("rank.", 0) == 0) m.rank_histogram[key.substr(5)] = std::stoull(value);
    }
    return m;
}

RecordWriter::RecordWriter(const std::string& path, int board_size, std::string split_tag)
    : path_(path) {
    file_ = std::fopen(path.c_str(), "wb");
    if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
    manifest_.board_size = board_size;
    manifest_.split = std::move(split_tag);
    uint8_t header[8] = {};
    std::memcpy(header, kMagic, 4);
    header[4] = static_cast<uint8_t>(kFormatVersion & 0xff);
    header[5] = static_cast<uint8_t>(kFormatVersion >> 8);
    header[6] = static_cast<uint8_t>(board_size);
    header[7] = 0;
    if (std::fwrite(header, 1, sizeof(header), file_) != sizeof(header)) {
        throw std::runtime_error("write failed: " + path);
    }
}

RecordWriter::~RecordWriter() {
    if (file_) std::fclose(file_);
}

void RecordWriter::add(const TrainingExample& e) {
    assert(!finished_);
    assert(e.board_size == manifest_.board_size);
    std::vector<uint8_t> payload;
    payload.reserve(6 + 2 * e.recent.size() + e.grid.size());
    payload.push_back(static_cast<uint8_t>(e.to_play));
    payload.push_back(static_cast<uint8_t>(encode_rank(e.rank)));
    put_u16(payload, e.expert_index);
    payload.push_back(static_cast<uint8_t>(e.recent.size()));
    for (const auto& rm : e.recent) {
        const uint16_t packed =
            static_cast<uint16_t>(rm.point_index | (rm.color == Color::White ? 0x8000 : 0));
        put_u16(payload, packed);
    }
    payload.insert(payload.end(), e.grid.begin(), e.grid.end());

    uint8_t len[2] = {static_cast<uint8_t>(payload.size() & 0xff),
                      static_cast<uint8_t>(payload.size() >> 8)};
    if (std::fwrite(len, 1, 2, file_) != 2 ||
        std::fwrite(payload.data(), 1, payload.size(), file_) != payload.size()) {
        throw std::runtime_error("write failed: " + path_);
    }
    ++manifest_.record_count;
    ++manifest_.rank_histogram[e.rank.to_string()];
}

DatasetManifest RecordWriter::finish() {
    assert(!finished_);
    finished_ = true;
    std::fclose(file_);
    file_ = nullptr;
    manifest_.save(path_ + ".manifest");
    return manifest_;
}

RecordReader::RecordReader(const std::string& path) {
    file_ = std::fopen(path.c_str(), "rb");
    if (!file_) throw std::runtime_error("cannot open " + path);
    uint8_t header[8];
    if (std::fread(header, 1, sizeof(header), file_) != sizeof(header)) {
        throw CorruptRecord("truncated header", 0);
    }
    if (std::memcmp(header, kMagic, 4) != 0) throw CorruptRecord("bad magic", 0);
    const uint16_t version = get_u16(header + 4);
    if (version != kFormatVersion) {
        throw VersionMismatch("record format version " + std::to_string(version) +
                              " not supported");
    }
    board_size_ = header[6];
    if (board_size_ < 2 || board_size_ > Position::kMaxSize) {
        throw CorruptRecord("bad board size in header", 6);
    }
    data_start_ = sizeof(header);
}

RecordReader::~RecordReader() {
    if (file_) std::fclose(file_);
}

void RecordReader::reset() {
    std::fseek(file_, static_cast<long>(data_start_), SEEK_SET);
}

std::optional<TrainingExample> RecordReader::next() {
    const auto offset = static_cast<uint64_t>(std::ftell(file_));
    uint8_t len_buf[2];
    const size_t got = std::fread(len_buf, 1, 2, file_);
    if (got == 0 && std::feof(file_)) return std::nullopt;
    if (got != 2) throw CorruptRecord("truncated record length", offset);
    const uint16_t len = get_u16(len_buf);
    std::vector<uint8_t> payload(len);
    if (std::fread(payload.data(), 1, len, file_) != len) {
        throw CorruptRecord("truncated record payload", offset);
    }

    const size_t grid_bytes = static_cast<size_t>(board_size_) * board_size_;
    if (len < 5 || payload.size() < 5) throw CorruptRecord("short record", offset);
    TrainingExample e;
    e.board_size = static_cast<uint8_t>(board_size_);
    e.to_play = static_cast<Color>(payload[0]);
    if (e.to_play != Color::Black && e.to_play != Color::White) {
        throw CorruptRecord("bad side to move", offset);
    }
    e.rank = decode_rank(static_cast<int8_t>(payload[1]));
    e.expert_index = get_u16(payload.data() + 2);
    const int n_recent = payload[4];
    if (n_recent > 5 || payload.size() != 5 + 2 * n_recent + grid_bytes) {
        throw CorruptRecord("record length mismatch", offset);
    }
    if (e.expert_index >= grid_bytes) throw CorruptRecord("expert move off board", offset);
    for (int i = 0; i < n_recent; ++i) {
        const uint16_t packed = get_u16(payload.data() + 5 + 2 * i);
        const uint16_t idx = packed & 0x7fff;
        if (idx >= grid_bytes) throw CorruptRecord("recent move off board", offset);
        e.recent.push_back(TrainingExample::RecentMove{
            idx, (packed & 0x8000) ? Color::White : Color::Black});
    }
    e.grid.assign(payload.begin() + 5 + 2 * n_recent, payload.end());
    for (uint8_t cell : e.grid) {
        if (cell > 2) throw CorruptRecord("bad grid cell", offset);
    }
    return e;
}

std::vector<TrainingExample> read_all_records(const std::string& path) {
    RecordReader reader(path);
    std::vector<TrainingExample> out;
    while (auto e = reader.next()) out.push_back(std::move(*e));
    return out;
}

} // namespace tengen
