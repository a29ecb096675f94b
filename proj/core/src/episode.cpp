#include "spotslab/episode.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spotslab/png_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace spotslab {

namespace {

const char* kLayoutNames[] = {"center",    "corner_tl", "corner_tr", "corner_bl", "corner_br",
                              "edge_n",    "edge_s",    "edge_e",    "edge_w",    "none"};

std::string frame_name(std::int64_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%05" PRId64 ".png", i);
    return buf;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const fs::path& path, const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path.string());
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << fmt_double(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::vector<double>> read_csv(const fs::path& path, std::size_t expect_cols,
                                          const char* field) {
    std::ifstream in(path);
    if (!in) throw SchemaError(std::string(field) + ": missing file " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(expect_cols);
        const char* p = line.c_str();
        char* end = nullptr;
        while (*p) {
            double v = std::strtod(p, &end);
            if (end == p)
                throw SchemaError(std::string(field) + " row " + std::to_string(rows.size()) +
                                  ": unparsable value");
            row.push_back(v);
            p = end;
            if (*p == ',') ++p;
        }
        if (row.size() != expect_cols)
            throw SchemaError(std::string(field) + " row " + std::to_string(rows.size()) + ": expected " +
                              std::to_string(expect_cols) + " columns, got " + std::to_string(row.size()));
        for (std::size_t i = 0; i < row.size(); ++i)
            if (!std::isfinite(row[i]))
                throw SchemaError(std::string(field) + " row " + std::to_string(rows.size()) + " col " +
                                  std::to_string(i) + ": non-finite value");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string to_string(FrictionLayout layout) { return kLayoutNames[static_cast<int>(layout)]; }

FrictionLayout friction_layout_from_string(const std::string& s) {
    for (int i = 0; i < 10; ++i)
        if (s == kLayoutNames[i]) return static_cast<FrictionLayout>(i);
    throw SchemaError("friction_layout: unknown value '" + s + "'");
}

std::vector<FrictionLayout> all_friction_layouts() {
    std::vector<FrictionLayout> out;
    for (int i = 0; i < 10; ++i) out.push_back(static_cast<FrictionLayout>(i));
    return out;
}

void Episode::validate() const {
    const auto n = scene.size();
    if (n == 0) throw SchemaError("episode: empty scene sequence");
    if (tactile.size() != n)
        throw SchemaError("tactile: length " + std::to_string(tactile.size()) + " does not match scene length " +
                          std::to_string(n));
    if (robot.size() != n)
        throw SchemaError("robot: length " + std::to_string(robot.size()) + " does not match scene length " +
                          std::to_string(n));
    const auto& shape0 = scene.front().pixels.shape;
    for (std::size_t t = 0; t < n; ++t) {
        if (scene[t].pixels.shape != shape0)
            throw SchemaError("scene frame " + std::to_string(t) + ": shape differs within episode");
        for (double v : scene[t].pixels.data)
            if (!(v >= 0.0 && v <= 1.0))
                throw SchemaError("scene frame " + std::to_string(t) + ": pixel outside [0,1]");
        if (!tactile[t].taxels.all_finite())
            throw SchemaError("tactile frame " + std::to_string(t) + ": non-finite value");
        for (double v : robot[t].pose_action)
            if (!std::isfinite(v)) throw SchemaError("robot row " + std::to_string(t) + ": non-finite value");
    }
}

void save_episode(const Episode& episode, const fs::path& dir) {
    episode.validate();

    const fs::path tmp = dir.string() + ".tmp";
    std::error_code ec;
    fs::remove_all(tmp, ec);
    if (!fs::create_directories(tmp, ec) || ec)
        throw std::runtime_error("save_episode: cannot create " + tmp.string() + ": " + ec.message());

    try {
        json meta;
        meta["sample_rate_hz"] = episode.meta.sample_rate_hz;
        meta["friction_layout"] = to_string(episode.meta.friction_layout);
        meta["seed"] = episode.meta.seed;
        meta["split_tag"] = episode.meta.split_tag;
        meta["length"] = episode.length();
        meta["no_contact"] = episode.meta.no_contact;
        std::ofstream mf(tmp / "meta.json");
        mf << meta.dump(2) << '\n';
        if (!mf) throw std::runtime_error("save_episode: failed writing meta.json");
        mf.close();

        fs::create_directories(tmp / "scene");
        for (std::int64_t t = 0; t < episode.length(); ++t)
            png_io::write_rgb(tmp / "scene" / frame_name(t), episode.scene[static_cast<std::size_t>(t)].pixels);

        std::vector<std::vector<double>> trows, rrows;
        for (const auto& f : episode.tactile) trows.push_back(f.taxels.data);
        for (const auto& r : episode.robot)
            rrows.emplace_back(r.pose_action.begin(), r.pose_action.end());
        write_csv(tmp / "tactile.csv", trows);
        write_csv(tmp / "robot.csv", rrows);
    } catch (...) {
        fs::remove_all(tmp, ec);
        throw;
    }

    fs::remove_all(dir, ec);
    fs::rename(tmp, dir, ec);
    if (ec) {
        fs::remove_all(tmp);
        throw std::runtime_error("save_episode: rename into " + dir.string() + " failed: " + ec.message());
    }
}

Episode load_episode(const fs::path& dir) {
    std::ifstream mf(dir / "meta.json");
    if (!mf) throw SchemaError("meta.json: missing in " + dir.string());
    json meta;
    try {
        mf >> meta;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("meta.json: parse error: ") + e.what());
    }

    Episode ep;
    try {
        ep.meta.sample_rate_hz = meta.at("sample_rate_hz").get<int>();
        ep.meta.friction_layout = friction_layout_from_string(meta.at("friction_layout").get<std::string>());
        ep.meta.seed = meta.at("seed").get<std::uint64_t>();
        ep.meta.split_tag = meta.at("split_tag").get<std::string>();
        ep.meta.no_contact = meta.value("no_contact", false);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("meta.json: ") + e.what());
    }
    const auto length = meta.at("length").get<std::int64_t>();
    if (length <= 0) throw SchemaError("meta.json: length must be positive");

    for (std::int64_t t = 0; t < length; ++t) {
        const fs::path p = dir / "scene" / frame_name(t);
        if (!fs::exists(p)) throw SchemaError("scene: missing frame " + p.filename().string());
        ep.scene.emplace_back(png_io::read_rgb(p));
    }

    const auto trows = read_csv(dir / "tactile.csv", kTactileDim, "tactile.csv");
    if (static_cast<std::int64_t>(trows.size()) != length)
        throw SchemaError("tactile.csv: " + std::to_string(trows.size()) + " rows, expected " +
                          std::to_string(length));
    for (const auto& row : trows) {
        TactileFrame f;
        f.taxels.data = row;
        ep.tactile.push_back(std::move(f));
    }

    const auto rrows = read_csv(dir / "robot.csv", kRobotDim, "robot.csv");
    if (static_cast<std::int64_t>(rrows.size()) != length)
        throw SchemaError("robot.csv: " + std::to_string(rrows.size()) + " rows, expected " +
                          std::to_string(length));
    for (const auto& row : rrows) {
        RobotState r;
        std::copy(row.begin(), row.end(), r.pose_action.begin());
        ep.robot.push_back(r);
    }

    ep.validate();
    return ep;
}

std::vector<SequenceSample> make_windows(const Episode& episode, int c, int T, int stride) {
    if (c < 1 || T <= c) throw std::invalid_argument("make_windows: need 1 <= c < T");
    if (stride < 1) throw std::invalid_argument("make_windows: stride must be >= 1");

    std::vector<SequenceSample> out;
    const std::int64_t len = episode.length();
    if (len < T + 1) return out;

    for (std::int64_t s = 0; s + T < len; s += stride) {
        SequenceSample w;
        w.c = c;
        w.T = T;
        for (int t = 0; t <= T; ++t) {
            const auto i = static_cast<std::size_t>(s + t);
            if (t < c) {
                w.context_scene.push_back(episode.scene[i]);
                w.context_tactile.push_back(episode.tactile[i]);
            } else {
                w.target_scene.push_back(episode.scene[i]);
                w.target_tactile.push_back(episode.tactile[i]);
            }
            w.actions.push_back(episode.robot[i]);
        }
        out.push_back(std::move(w));
    }
    return out;
}

NormStats compute_tactile_stats(const std::vector<Episode>& training_split) {
    if (training_split.empty()) throw std::invalid_argument("compute_tactile_stats: empty split");
    NormStats s;
    s.min_v.fill(std::numeric_limits<double>::infinity());
    s.max_v.fill(-std::numeric_limits<double>::infinity());
    for (const auto& ep : training_split)
        for (const auto& f : ep.tactile)
            for (int i = 0; i < kTactileDim; ++i) {
                const double v = f.taxels.data[static_cast<std::size_t>(i)];
                auto& mn = s.min_v[static_cast<std::size_t>(i)];
                auto& mx = s.max_v[static_cast<std::size_t>(i)];
                if (v < mn) mn = v;
                if (v > mx) mx = v;
            }
    return s;
}

TactileFrame normalize_tactile(const TactileFrame& frame, const NormStats& stats) {
    TactileFrame out;
    for (int i = 0; i < kTactileDim; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        if (stats.degenerate(i)) {
            out.taxels.data[iu] = 0.5;
        } else {
            double v = (frame.taxels.data[iu] - stats.min_v[iu]) / (stats.max_v[iu] - stats.min_v[iu]);
            out.taxels.data[iu] = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        }
    }
    return out;
}

void save_manifest(const fs::path& root, const DatasetManifest& manifest) {
    json j;
    for (const auto& [tag, dirs] : manifest.splits) j["splits"][tag] = dirs;
    j["tactile_rest"] = {{"value", manifest.tactile_rest_value}, {"noise_sigma", manifest.tactile_noise_sigma}};
    j["seed"] = manifest.seed;
    j["info"] = manifest.info;
    std::ofstream out(root / "manifest.json");
    if (!out) throw std::runtime_error("save_manifest: cannot write in " + root.string());
    out << j.dump(2) << '\n';
}

DatasetManifest load_manifest(const fs::path& root) {
    std::ifstream in(root / "manifest.json");
    if (!in) throw SchemaError("manifest.json: missing in " + root.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("manifest.json: parse error: ") + e.what());
    }
    DatasetManifest m;
    try {
        if (j.contains("splits"))
            for (const auto& [tag, dirs] : j["splits"].items())
                m.splits[tag] = dirs.get<std::vector<std::string>>();
        m.tactile_rest_value = j.at("tactile_rest").at("value").get<double>();
        m.tactile_noise_sigma = j.at("tactile_rest").at("noise_sigma").get<double>();
        m.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("info"))
            for (const auto& [k, v] : j["info"].items()) m.info[k] = v.get<std::string>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string("manifest.json: ") + e.what());
    }
    return m;
}

std::vector<Episode> load_split(const fs::path& root, const std::string& split_tag) {
    const auto manifest = load_manifest(root);
    const auto it = manifest.splits.find(split_tag);
    if (it == manifest.splits.end()) throw SchemaError("manifest.json: no split named '" + split_tag + "'");
    std::vector<Episode> out;
    out.reserve(it->second.size());
    for (const auto& rel : it->second) out.push_back(load_episode(root / rel));
    return out;
}

}  // namespace spotslab
