#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spotslab/tensor.hpp"

namespace spotslab {

inline constexpr int kSceneSize = 64;        // H == W
inline constexpr int kTaxelRows = 4;
inline constexpr int kTaxelCols = 4;
inline constexpr int kTaxelChannels = 3;     // normal, shear-x, shear-y
inline constexpr int kTactileDim = kTaxelRows * kTaxelCols * kTaxelChannels;  // 48
inline constexpr int kRobotDim = 7;

/// One RGB observation of the scene, [3,H,W] with values in [0,1].
struct SceneFrame {
    Tensor pixels;

    SceneFrame() : pixels({3, kSceneSize, kSceneSize}) {}
    explicit SceneFrame(Tensor p) : pixels(std::move(p)) {}

    bool operator==(const SceneFrame& o) const { return pixels.shape == o.pixels.shape && pixels.data == o.pixels.data; }
};

/// One 4x4x3 taxel frame, indexed (row, col, channel).
/// Flattened row-major this is exactly the R^48 vector used everywhere else.
struct TactileFrame {
    Tensor taxels;

    TactileFrame() : taxels({kTaxelRows, kTaxelCols, kTaxelChannels}) {}
    explicit TactileFrame(Tensor t) : taxels(std::move(t)) {}

    static TactileFrame constant(double v) {
        TactileFrame f;
        for (auto& x : f.taxels.data) x = v;
        return f;
    }

    double& at(int r, int c, int ch) { return taxels.at3(r, c, ch); }
    double at(int r, int c, int ch) const { return taxels.at3(r, c, ch); }

    bool operator==(const TactileFrame& o) const { return taxels.data == o.taxels.data; }
};

/// Task-space robot state/action: (x, y, z, qw, qx, qy, qz).
struct RobotState {
    std::array<double, kRobotDim> pose_action{};

    bool operator==(const RobotState& o) const { return pose_action == o.pose_action; }
};

enum class FrictionLayout {
    center,
    corner_tl,
    corner_tr,
    corner_bl,
    corner_br,
    edge_n,
    edge_s,
    edge_e,
    edge_w,
    none,
};

std::string to_string(FrictionLayout layout);
FrictionLayout friction_layout_from_string(const std::string& s);
std::vector<FrictionLayout> all_friction_layouts();

struct EpisodeMeta {
    int sample_rate_hz = 10;
    FrictionLayout friction_layout = FrictionLayout::none;
    std::uint64_t seed = 0;
    std::string split_tag;
    bool no_contact = false;

    bool operator==(const EpisodeMeta& o) const = default;
};

/// One pushing trial: synchronized scene, tactile and robot sequences.
/// Immutable after load; safe to share across workers.
struct Episode {
    std::vector<SceneFrame> scene;
    std::vector<TactileFrame> tactile;
    std::vector<RobotState> robot;
    EpisodeMeta meta;

    std::int64_t length() const { return static_cast<std::int64_t>(scene.size()); }

    /// Throws SchemaError if sequences are misaligned or values non-finite.
    void validate() const;
};

/// A (context, horizon) training window cut from an episode.
/// Frames are relabeled so the window spans t = 0..T.
struct SequenceSample {
    std::vector<SceneFrame> context_scene;     // x_{0:c-1}
    std::vector<TactileFrame> context_tactile; // d_{0:c-1}
    std::vector<RobotState> actions;           // a_{0:T}
    std::vector<SceneFrame> target_scene;      // x_{c:T}
    std::vector<TactileFrame> target_tactile;  // d_{c:T}
    int c = 0;
    int T = 0;

    int horizon() const { return T - c + 1; }  // number of predicted frames
};

/// Per-channel min/max over the training split (48 channels).
struct NormStats {
    std::array<double, kTactileDim> min_v{};
    std::array<double, kTactileDim> max_v{};

    static NormStats identity() {
        NormStats s;
        s.min_v.fill(0.0);
        s.max_v.fill(1.0);
        return s;
    }

    bool degenerate(int i) const { return max_v[static_cast<std::size_t>(i)] <= min_v[static_cast<std::size_t>(i)]; }
};

/// Raised when on-disk data does not match the episode schema; the message
/// names the offending field.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// Writes the episode directory layout:
///   meta.json, scene/%05d.png, tactile.csv (N x 48), robot.csv (N x 7).
/// The write is staged in a temp directory and renamed into place, so a
/// failure never leaves a partial episode at `dir`.
void save_episode(const Episode& episode, const std::filesystem::path& dir);

Episode load_episode(const std::filesystem::path& dir);

/// Cuts sliding windows of T+1 frames. Episodes shorter than T+1 frames give
/// an empty list. Window count is floor((len-T-1)/stride)+1.
std::vector<SequenceSample> make_windows(const Episode& episode, int c, int T, int stride);

NormStats compute_tactile_stats(const std::vector<Episode>& training_split);

/// Min-max normalization per channel, clamped to [0,1]; degenerate channels
/// map to 0.5.
TactileFrame normalize_tactile(const TactileFrame& frame, const NormStats& stats);

/// Dataset root metadata: episode directories per split plus the tactile
/// rest-signal parameters needed for anaesthetised evaluation.
struct DatasetManifest {
    std::map<std::string, std::vector<std::string>> splits;  // split tag -> episode dirs (relative to root)
    double tactile_rest_value = 0.0;
    double tactile_noise_sigma = 0.0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> info;

    TactileFrame rest_frame() const { return TactileFrame::constant(tactile_rest_value); }
};

void save_manifest(const std::filesystem::path& root, const DatasetManifest& manifest);
DatasetManifest load_manifest(const std::filesystem::path& root);

std::vector<Episode> load_split(const std::filesystem::path& root, const std::string& split_tag);

}  // namespace spotslab
