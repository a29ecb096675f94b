#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "spotslab/episode.hpp"
#include "spotslab/rng.hpp"
#include "spotslab/tensor.hpp"

namespace spotslab::sim {

/// Planar rigid box with a hidden high-friction patch. The arena is the
/// unit square in meters; renderings map it onto the 64x64 frame.
struct ObjectState {
    double x = 0.5, y = 0.5;      // center, meters
    double heading = 0.0;         // radians, CCW
    double half_len = 0.11;       // along local x
    double half_wid = 0.075;      // along local y
    double patch_dx = 0.0;        // friction patch offset, object frame
    double patch_dy = 0.0;
    double patch_gain = 1.0;      // >= 1; 1 means uniform friction
};

struct PusherState {
    double x = 0.0, y = 0.0;      // tip center
    double dir_x = 1.0, dir_y = 0.0;  // unit push direction
    double speed = 0.06;          // m/s
};

struct ContactInfo {
    bool in_contact = false;
    double contact_x = 0.0, contact_y = 0.0;  // object frame
    double normal_force = 0.0;                // >= 0, simulator units
    double tangent_fx = 0.0, tangent_fy = 0.0;  // world frame
};

/// Fixed physical and sensing constants. These were tuned once against the
/// edge-case divergence and dt-consistency checks and are frozen.
struct SimParams {
    double pusher_radius = 0.018;
    double rot_gain = 2.4;        // rotation per resolved push, dimensionless
    double normal_gain = 9.0;     // force per m/s of resolved penetration rate
    double tangent_gain = 55.0;   // force per rad/s of contact slew
    double taxel_sigma = 1.0;     // Gaussian footprint, in taxel pitches
    double taxel_pitch = 0.012;   // meters between taxel centers
    double rest_value = 0.4;      // no-contact baseline, all channels
    double noise_sigma = 0.01;
};

inline const SimParams& default_params() {
    static const SimParams p;
    return p;
}

/// Effective friction centroid in the object frame: the support center
/// shifted toward the patch by (gain-1)/gain.
std::pair<double, double> friction_centroid(const ObjectState& obj);

/// One quasi-static step. `pusher` holds the tip pose at the END of the
/// interval; if the tip penetrates the (pusher-radius inflated) box, the
/// object translates along the push direction just enough to separate and
/// rotates about the effective friction centroid in proportion to the
/// moment arm. Pure function of its inputs.
std::pair<ObjectState, ContactInfo> step_push(const ObjectState& obj, const PusherState& pusher,
                                              double dt, const SimParams& params = default_params());

/// 4x4x3 taxel frame: rest value plus force response under a Gaussian
/// footprint centered at the contact point, plus seeded noise on every
/// channel. Pass noise_sigma = 0 in params to disable noise.
TactileFrame sense_taxels(const ContactInfo& contact, const PusherState& pusher,
                          const ObjectState& obj, Rng& noise_rng,
                          const SimParams& params = default_params());

/// Top-down 64x64x3 rendering: flat background, solid box, pusher disc.
/// The friction patch is never drawn.
SceneFrame render_scene(const ObjectState& obj, const PusherState& pusher,
                        const SimParams& params = default_params());

/// Binary object-coverage mask (64x64), 1 where the box covers >= half a
/// pixel. Used for ground-truth location overlays.
Tensor object_mask(const ObjectState& obj);

/// World point -> fractional pixel (col, row).
std::pair<double, double> pixel_of(double wx, double wy);

/// Object centroid in fractional pixels.
std::pair<double, double> centroid_pixel(const ObjectState& obj);

struct EpisodeConfig {
    FrictionLayout layout = FrictionLayout::center;
    double duration_s = 4.0;
    int rate_hz = 10;
    bool randomize = true;     // seeded jitter of start pose and push line
    std::string split_tag;
};

struct EpisodeTrace {
    std::vector<ObjectState> object;
    std::vector<PusherState> pusher;
};

/// Deterministic per (config, seed). 40 frames at the default 4 s / 10 Hz.
/// Robot rows carry the tip pose embedded as (x, y, z, qw, qx, qy, qz).
Episode generate_episode(const EpisodeConfig& config, std::uint64_t seed,
                         const SimParams& params = default_params(),
                         EpisodeTrace* trace = nullptr);

struct DatasetSpec {
    std::vector<FrictionLayout> train_layouts;
    std::vector<FrictionLayout> test_layouts;
    int episodes_per_train_layout = 40;
    int episodes_per_test_layout = 30;
    bool require_disjoint = true;
    double duration_s = 4.0;
    int rate_hz = 10;
};

/// Generates and writes the full dataset under `root`; returns the saved
/// manifest. Train and test layout sets must be disjoint when requested.
DatasetManifest generate_dataset(const DatasetSpec& spec, std::uint64_t seed,
                                 const std::filesystem::path& root,
                                 const SimParams& params = default_params());

/// The four corner-patch episodes: identical start pose and push line, the
/// friction patch at each corner. Order: tl, tr, bl, br.
std::vector<Episode> edge_case_suite(const SimParams& params = default_params());

/// Object state trajectory for one edge-case episode (same stepping that
/// produced the suite frames).
std::vector<ObjectState> edge_case_trajectory(FrictionLayout corner,
                                              const SimParams& params = default_params());

/// Friction patch offset for a layout, on an object with the given extents.
std::pair<double, double> layout_offset(FrictionLayout layout, double half_len, double half_wid);

}  // namespace spotslab::sim
