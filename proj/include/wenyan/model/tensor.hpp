// SPDX-License-Identifier: Apache-2.0
//
// Dense row-major tensor of 64-bit floats. Double precision keeps the
// finite-difference gradient checks tight.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wenyan {

struct Tensor {
    std::vector<size_t> shape;
    std::vector<double> data;

    Tensor() = default;
    Tensor(std::vector<size_t> s, std::vector<double> d)
        : shape(std::move(s)), data(std::move(d)) {}

    static Tensor zeros(std::vector<size_t> shape);
    static Tensor scalar(double v) { return Tensor({1}, {v}); }

    size_t numel() const {
        size_t n = 1;
        for (size_t d : shape) n *= d;
        return shape.empty() ? 0 : n;
    }
    size_t ndim() const { return shape.size(); }
    size_t rows() const { return shape.empty() ? 0 : shape[0]; }
    size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }

    double& at(size_t r, size_t c) { return data[r * cols() + c]; }
    double at(size_t r, size_t c) const { return data[r * cols() + c]; }
    double& operator[](size_t i) { return data[i]; }
    double operator[](size_t i) const { return data[i]; }

    bool same_shape(const Tensor& other) const { return shape == other.shape; }
    bool all_finite() const;
    std::string shape_str() const;
};

}  // namespace wenyan
