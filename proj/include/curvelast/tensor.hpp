#pragma once

#include <array>
#include <cstddef>

// Dense second- and fourth-order tensors in the fixed orthonormal basis
// (e_theta, e_z, e_r). Index order (0,1,2) = (theta, z, r).

namespace curvelast {

struct Tensor2 {
    std::array<double, 9> v{};

    double& operator()(int i, int j) { return v[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return v[static_cast<std::size_t>(3 * i + j)]; }

    static Tensor2 zero() { return {}; }
    static Tensor2 identity() {
        Tensor2 t;
        t(0, 0) = t(1, 1) = t(2, 2) = 1.0;
        return t;
    }
    static Tensor2 diag(double a, double b, double c) {
        Tensor2 t;
        t(0, 0) = a;
        t(1, 1) = b;
        t(2, 2) = c;
        return t;
    }

    Tensor2& operator+=(const Tensor2& o) {
        for (std::size_t i = 0; i < 9; ++i) v[i] += o.v[i];
        return *this;
    }
    Tensor2& operator*=(double s) {
        for (double& x : v) x *= s;
        return *this;
    }

    friend Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
    friend Tensor2 operator*(double s, Tensor2 a) { return a *= s; }

    Tensor2 transpose() const {
        Tensor2 t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = x > m ? x : (-x > m ? -x : m);
        return m;
    }
};

inline Tensor2 matmul(const Tensor2& a, const Tensor2& b) {
    Tensor2 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

// Fourth-order tensor with an explicit sparsity mask: every entry not
// populated through set()/set_sym()/add() is exactly zero and stays outside
// the mask. Component formulas populate only the index patterns they define.
struct Tensor4Block {
    std::array<double, 81> v{};
    std::array<bool, 81> mask{};

    static constexpr std::size_t idx(int i, int j, int k, int l) {
        return static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l);
    }

    double operator()(int i, int j, int k, int l) const { return v[idx(i, j, k, l)]; }
    bool in_mask(int i, int j, int k, int l) const { return mask[idx(i, j, k, l)]; }

    void set(int i, int j, int k, int l, double x) {
        v[idx(i, j, k, l)] = x;
        mask[idx(i, j, k, l)] = true;
    }
    void add(int i, int j, int k, int l, double x) {
        v[idx(i, j, k, l)] += x;
        mask[idx(i, j, k, l)] = true;
    }
    // Value acting on a symmetric second-order slot: split evenly over (k,l) and (l,k).
    void set_sym(int i, int j, int k, int l, double x) {
        set(i, j, k, l, 0.5 * x);
        set(i, j, l, k, 0.5 * x);
    }

    Tensor4Block& operator+=(const Tensor4Block& o) {
        for (std::size_t n = 0; n < 81; ++n) {
            v[n] += o.v[n];
            mask[n] = mask[n] || o.mask[n];
        }
        return *this;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = x > m ? x : (-x > m ? -x : m);
        return m;
    }
};

// (T4 : T2)_{ij} = sum_{kl} T4_{ijkl} T2_{kl}
inline Tensor2 double_contract(const Tensor4Block& t4, const Tensor2& t2) {
    Tensor2 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) s += t4(i, j, k, l) * t2(k, l);
            out(i, j) = s;
        }
    return out;
}

// Orthogonal projection onto the tangent plane with normal e_r: zeroes the
// third row and column.
inline Tensor2 surface_project(const Tensor2& t) {
    Tensor2 p = t;
    for (int i = 0; i < 3; ++i) {
        p(2, i) = 0.0;
        p(i, 2) = 0.0;
    }
    return p;
}

}  // namespace curvelast
