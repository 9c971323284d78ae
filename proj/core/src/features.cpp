#include "tengen/features.hpp"

namespace tengen {

FeatureTensor FeatureTensor::transformed(int g) const {
    FeatureTensor out(size);
    for (int plane = 0; plane < kPlanes; ++plane) {
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                const Point src{(uint8_t)c, (uint8_t)r};
                out.at(plane, transform_point(src, g, size)) = at(plane, src);
            }
        }
    }
    return out;
}

std::array<bool, 9> rank_planes(Rank rank) {
    std::array<bool, 9> planes{};
    if (rank.kind == Rank::Kind::Dan) {
        planes[rank.value - 1] = true;
    } else if (rank.kind == Rank::Kind::Pro) {
        planes[8] = true;
    }
    return planes;
}

int liberties_after(const Position& pos, Point pt) {
    return pos.liberties_after(pt);
}

int capture_size(const Position& pos, Point pt) {
    return pos.capture_size(pt);
}

FeatureTensor extract_features(const Position& pos, Rank rank) {
    const int n = pos.size();
    FeatureTensor t(n);
    const Color me = pos.to_play();

    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const Point p{(uint8_t)c, (uint8_t)r};
            const Color col = pos.at(p);
            if (col == Color::Black) {
                t.at(FeatureTensor::kBlack, p) = 1;
            } else if (col == Color::White) {
                t.at(FeatureTensor::kWhite, p) = 1;
            } else {
                t.at(FeatureTensor::kEmptyPlane, p) = 1;
            }

            if (col != Color::Empty) {
                const int libs = pos.chain_liberties(p);
                const int bucket = libs >= 4 ? 3 : libs - 1;
                t.at(FeatureTensor::kLiberties + bucket, p) = 1;
                continue;
            }

            if (!pos.is_legal(Move::play(me, p))) continue;
            t.at(FeatureTensor::kLegal, p) = 1;

            const int after = pos.liberties_after(p);
            const int after_bucket = after >= 6 ? 5 : after - 1;
            t.at(FeatureTensor::kLibertiesAfter + after_bucket, p) = 1;

            const int captured = pos.capture_size(p);
            if (captured > 0) {
                const int cap_bucket = captured >= 7 ? 6 : captured - 1;
                t.at(FeatureTensor::kCaptureSize + cap_bucket, p) = 1;
            }

            if (is_ladder_capture(pos, p)) t.at(FeatureTensor::kLadder, p) = 1;
        }
    }

    // Recency markers; a marker is dropped when the played stone is gone.
    const auto recent = pos.recent_plays(5);
    for (int k = 0; k < (int)recent.size(); ++k) {
        if (pos.at(recent[k].point) == recent[k].color) {
            t.at(FeatureTensor::kTurnsSince + k, recent[k].point) = 1;
        }
    }

    const auto ranks = rank_planes(rank);
    for (int d = 0; d < 9; ++d) {
        if (!ranks[d]) continue;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                t.at(FeatureTensor::kRank + d, Point{(uint8_t)c, (uint8_t)r}) = 1;
            }
        }
    }
    return t;
}

} // namespace tengen
