#pragma once

#include <cstdint>
#include <vector>

#include "error.hpp"

namespace permqubo {

// Dense square integer matrix, row-major.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int n, std::int64_t fill = 0)
        : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {
        if (n < 0) fail(ErrorCode::argument, "matrix size must be nonnegative");
    }

    int n() const noexcept { return n_; }

    std::int64_t& at(int r, int c) {
        return data_[static_cast<std::size_t>(r) * n_ + c];
    }
    std::int64_t at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * n_ + c];
    }

    const std::vector<std::int64_t>& data() const noexcept { return data_; }

    bool operator==(const SquareMatrix&) const = default;

    bool symmetric() const {
        for (int r = 0; r < n_; ++r)
            for (int c = r + 1; c < n_; ++c)
                if (at(r, c) != at(c, r)) return false;
        return true;
    }

    bool zero_diagonal() const {
        for (int r = 0; r < n_; ++r)
            if (at(r, r) != 0) return false;
        return true;
    }

private:
    int n_ = 0;
    std::vector<std::int64_t> data_;
};

} // namespace permqubo
