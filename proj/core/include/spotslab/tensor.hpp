#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "spotslab/rng.hpp"

namespace spotslab {

/// Dense row-major tensor of doubles with value semantics.
///
/// Images use [C,H,W] (or [B,C,H,W] batched), feature vectors [D] or [B,D].
struct Tensor {
    std::vector<std::int64_t> shape;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<std::int64_t> s) : shape(std::move(s)) {
        data.assign(static_cast<std::size_t>(numel_of(shape)), 0.0);
    }

    static std::int64_t numel_of(const std::vector<std::int64_t>& s) {
        std::int64_t n = 1;
        for (auto d : s) n *= d;
        return n;
    }

    std::int64_t numel() const { return static_cast<std::int64_t>(data.size()); }
    std::int64_t dim(std::size_t i) const { return shape.at(i); }
    std::size_t rank() const { return shape.size(); }

    double& operator[](std::int64_t i) { return data[static_cast<std::size_t>(i)]; }
    double operator[](std::int64_t i) const { return data[static_cast<std::size_t>(i)]; }

    double& at3(std::int64_t a, std::int64_t b, std::int64_t c) {
        return data[static_cast<std::size_t>((a * shape[1] + b) * shape[2] + c)];
    }
    double at3(std::int64_t a, std::int64_t b, std::int64_t c) const {
        return data[static_cast<std::size_t>((a * shape[1] + b) * shape[2] + c)];
    }
    double& at4(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        return data[static_cast<std::size_t>(((a * shape[1] + b) * shape[2] + c) * shape[3] + d)];
    }
    double at4(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const {
        return data[static_cast<std::size_t>(((a * shape[1] + b) * shape[2] + c) * shape[3] + d)];
    }

    static Tensor zeros(std::vector<std::int64_t> s) { return Tensor(std::move(s)); }

    static Tensor full(std::vector<std::int64_t> s, double v) {
        Tensor t(std::move(s));
        for (auto& x : t.data) x = v;
        return t;
    }

    static Tensor from(std::vector<std::int64_t> s, std::vector<double> values) {
        Tensor t;
        t.shape = std::move(s);
        if (numel_of(t.shape) != static_cast<std::int64_t>(values.size()))
            throw std::invalid_argument("Tensor::from: shape/data size mismatch");
        t.data = std::move(values);
        return t;
    }

    static Tensor randn(std::vector<std::int64_t> s, Rng& rng, double sigma = 1.0) {
        Tensor t(std::move(s));
        for (auto& x : t.data) x = sigma * rng.normal();
        return t;
    }

    Tensor reshaped(std::vector<std::int64_t> s) const {
        if (numel_of(s) != numel())
            throw std::invalid_argument("Tensor::reshaped: element count mismatch");
        Tensor t;
        t.shape = std::move(s);
        t.data = data;
        return t;
    }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline std::string shape_str(const std::vector<std::int64_t>& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

}  // namespace spotslab
