#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "instances.hpp"

namespace permqubo {

enum class LayoutKind { qap_full, tsp_fixed_first };

// Maps a (object, position) grid onto flat variable indices.
//
// qap_full:        rows = cols = n, variable (i,k) = facility i at location k,
//                  flat index i*n + k.
// tsp_fixed_first: rows = cols = n-1 after fixing city 0 at position 0;
//                  row i is city i+1, column k is tour position k+1,
//                  flat index k*(n-1) + i (position-major, the ordering the
//                  published companion matrices use).
struct VariableLayout {
    int rows = 0;
    int cols = 0;
    LayoutKind kind = LayoutKind::qap_full;

    int m() const noexcept { return rows * cols; }

    int index(int i, int k) const noexcept {
        return kind == LayoutKind::qap_full ? i * cols + k : k * rows + i;
    }

    // Inverse of index().
    void coords(int v, int& i, int& k) const noexcept {
        if (kind == LayoutKind::qap_full) {
            i = v / cols;
            k = v % cols;
        } else {
            k = v / rows;
            i = v % rows;
        }
    }

    bool operator==(const VariableLayout&) const = default;
};

// Upper-triangular QUBO: energy(x) = sum_{r<=c} coeff(r,c) x_r x_c + constant.
// Storage is the packed upper triangle; entries with r > c do not exist.
class QuboModel {
public:
    QuboModel() = default;
    QuboModel(VariableLayout layout, std::int64_t constant = 0);

    int m() const noexcept { return m_; }
    const VariableLayout& layout() const noexcept { return layout_; }
    std::int64_t constant() const noexcept { return constant_; }
    void set_constant(std::int64_t k) { constant_ = k; }

    // Stored entry, r <= c required.
    std::int64_t coeff(int r, int c) const { return coeff_[tri(r, c)]; }
    void add(int r, int c, std::int64_t v);
    void set(int r, int c, std::int64_t v);

    // Symmetric view: the stored entry for the unordered pair {i, j}.
    std::int64_t couple(int i, int j) const {
        return i <= j ? coeff(i, j) : coeff(j, i);
    }

    const std::vector<std::int64_t>& packed() const noexcept { return coeff_; }

    // Sum of |coeff| + |constant|; bounds every reachable |energy|.
    std::int64_t magnitude() const;

private:
    std::size_t tri(int r, int c) const;

    int m_ = 0;
    VariableLayout layout_;
    std::int64_t constant_ = 0;
    std::vector<std::int64_t> coeff_;
};

// Cost QUBOs (constant 0).
QuboModel build_qap_cost(const QapInstance& inst);
QuboModel build_tsp_cost(const TspInstance& inst);

// Two-way one-hot constraint QUBO for the layout: x^T G x + constant equals
// the constraint function exactly (0 on feasible assignments, positive and
// even otherwise).
QuboModel build_constraint(const VariableLayout& layout);

// Q = C + alpha * G (alpha >= 1), entrywise with checked arithmetic.
QuboModel combine(const QuboModel& cost, const QuboModel& constraint,
                  std::int64_t alpha);

// Exact energy, including the constant.
std::int64_t evaluate(const QuboModel& model, const std::vector<std::uint8_t>& x);

// Per-variable effective fields h[j] = coeff(j,j) + sum_{i != j} couple(i,j)*x[i].
// Flip delta of bit j is (1 - 2 x[j]) * h[j] at all times.
struct EffectiveFields {
    std::vector<std::int64_t> h;
    std::vector<std::uint8_t> x;
};

EffectiveFields init_fields(const QuboModel& model,
                            const std::vector<std::uint8_t>& x);
std::int64_t flip_delta(const EffectiveFields& fields, int j);
// Flips bit j, updates all fields, returns the energy delta.
std::int64_t apply_flip(const QuboModel& model, EffectiveFields& fields, int j);

// Decodes a two-way one-hot bit vector.  For qap_full, sigma[i] is the
// location of facility i.  For tsp_fixed_first the result is the full
// n-city tour by position, city 0 prepended at position 0.
// Returns nullopt when any row or column is not exactly one-hot.
std::optional<std::vector<int>> decode(const VariableLayout& layout,
                                       const std::vector<std::uint8_t>& x);

// Plain-text exchange format: header "m constant", then one "row col value"
// triplet per nonzero stored entry (0-based, row <= col).
std::string to_text(const QuboModel& model);
QuboModel from_text(std::string_view text);

// JSON envelope carrying the layout metadata alongside the triplets.
std::string to_json(const QuboModel& model);
QuboModel from_json(std::string_view text);

} // namespace permqubo
