#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "matrix.hpp"

namespace permqubo {

enum class ProblemKind { tsp, qap };

enum class TspSource {
    explicit_full,
    explicit_upper_row,
    explicit_lower_diag_row,
    explicit_upper_diag_row,
    euc2d,
};

struct TspInstance {
    std::string name;
    int n = 0;
    SquareMatrix dist;          // symmetric, zero diagonal
    TspSource source = TspSource::explicit_full;

    void validate() const;
};

struct QapInstance {
    std::string name;
    int n = 0;
    SquareMatrix flow;          // first matrix in file order
    SquareMatrix dist;          // second matrix in file order

    void validate() const;
};

using ProblemInstance = std::variant<TspInstance, QapInstance>;

ProblemKind kind_of(const ProblemInstance& inst);
const std::string& name_of(const ProblemInstance& inst);
int size_of(const ProblemInstance& inst);

// TSPLIB parser.  Supports TYPE: TSP with EDGE_WEIGHT_TYPE EXPLICIT
// (FULL_MATRIX, UPPER_ROW, LOWER_DIAG_ROW, UPPER_DIAG_ROW) or EUC_2D.
// Anything else is rejected with a parse error.
TspInstance parse_tsplib(std::string_view text);

// QAPLIB parser: first token n, then the n*n flow matrix, then the n*n
// distance matrix; whitespace-delimited, line breaks insignificant.
QapInstance parse_qaplib(std::string_view text, std::string name = {});

// Deterministic small-instance generator for oracle tests.
// TSP: 3 <= n <= 10, symmetric, zero diagonal, entries in [1, max_value].
// QAP: 2 <= n <= 10, zero diagonals, entries in [0, max_value].
ProblemInstance random_instance(ProblemKind kind, int n, std::uint64_t seed,
                                std::int64_t max_value);

// Canonical serializations (round-trip with the parsers above).
std::string to_tsplib_full_matrix(const TspInstance& inst);
std::string to_qaplib_text(const QapInstance& inst);
std::string instance_summary(const ProblemInstance& inst);

} // namespace permqubo
