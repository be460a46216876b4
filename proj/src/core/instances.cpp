#include "instances.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "checked.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace permqubo {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::int64_t parse_int_token(const std::string& tok, const char* what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail(ErrorCode::parse,
             std::string("expected integer ") + what + ", got '" + tok + "'");
    return v;
}

double parse_real_token(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::parse,
             std::string("expected number ") + what + ", got '" + tok + "'");
    }
}

} // namespace

void TspInstance::validate() const {
    if (n < 3) fail(ErrorCode::argument, "TSP instance needs n >= 3");
    if (dist.n() != n) fail(ErrorCode::argument, "distance matrix size mismatch");
    if (!dist.zero_diagonal())
        fail(ErrorCode::argument, "TSP distance matrix must have zero diagonal");
    if (!dist.symmetric())
        fail(ErrorCode::argument, "TSP distance matrix must be symmetric");
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (dist.at(r, c) < 0)
                fail(ErrorCode::argument, "TSP distances must be nonnegative");
}

void QapInstance::validate() const {
    if (n < 2) fail(ErrorCode::argument, "QAP instance needs n >= 2");
    if (flow.n() != n || dist.n() != n)
        fail(ErrorCode::argument, "QAP matrix size mismatch");
}

ProblemKind kind_of(const ProblemInstance& inst) {
    return std::holds_alternative<TspInstance>(inst) ? ProblemKind::tsp
                                                     : ProblemKind::qap;
}

const std::string& name_of(const ProblemInstance& inst) {
    return std::visit([](const auto& i) -> const std::string& { return i.name; },
                      inst);
}

int size_of(const ProblemInstance& inst) {
    return std::visit([](const auto& i) { return i.n; }, inst);
}

TspInstance parse_tsplib(std::string_view text) {
    std::string name, type, ewt, ewf;
    int dimension = -1;
    std::vector<std::int64_t> weights;
    std::vector<std::pair<double, double>> coords;

    enum class Section { header, edge_weights, node_coords, skip };
    Section section = Section::header;

    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "EOF") break;

        if (section == Section::header || std::isalpha(static_cast<unsigned char>(t[0]))) {
            std::string key = t, value;
            std::size_t colon = t.find(':');
            if (colon != std::string::npos) {
                key = trim(t.substr(0, colon));
                value = trim(t.substr(colon + 1));
            }
            if (key == "EDGE_WEIGHT_SECTION") { section = Section::edge_weights; continue; }
            if (key == "NODE_COORD_SECTION") { section = Section::node_coords; continue; }
            if (key == "DISPLAY_DATA_SECTION") { section = Section::skip; continue; }
            if (key == "NAME") { name = value; continue; }
            if (key == "TYPE") { type = value; continue; }
            if (key == "DIMENSION") { dimension = static_cast<int>(parse_int_token(value, "DIMENSION")); continue; }
            if (key == "EDGE_WEIGHT_TYPE") { ewt = value; continue; }
            if (key == "EDGE_WEIGHT_FORMAT") { ewf = value; continue; }
            if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE" || key == "NODE_COORD_TYPE") continue;
            if (section == Section::header)
                continue;   // unknown header keys are harmless
        }

        std::istringstream ls(t);
        std::string tok;
        if (section == Section::edge_weights) {
            while (ls >> tok) weights.push_back(parse_int_token(tok, "edge weight"));
        } else if (section == Section::node_coords) {
            std::string id, xs, ys;
            if (!(ls >> id >> xs >> ys))
                fail(ErrorCode::parse, "malformed NODE_COORD_SECTION line: " + t);
            coords.emplace_back(parse_real_token(xs, "x coordinate"),
                                parse_real_token(ys, "y coordinate"));
        }
        // Section::skip — display data, ignored
    }

    if (type != "TSP")
        fail(ErrorCode::parse, "unsupported TYPE '" + type + "' (only TSP)");
    if (dimension < 3)
        fail(ErrorCode::parse, "missing or invalid DIMENSION");

    const int n = dimension;
    TspInstance inst;
    inst.name = name;
    inst.n = n;
    inst.dist = SquareMatrix(n);

    if (ewt == "EUC_2D") {
        inst.source = TspSource::euc2d;
        if (static_cast<int>(coords.size()) != n)
            fail(ErrorCode::parse, "NODE_COORD_SECTION has " +
                                       std::to_string(coords.size()) +
                                       " entries, DIMENSION is " + std::to_string(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                double dx = coords[a].first - coords[b].first;
                double dy = coords[a].second - coords[b].second;
                inst.dist.at(a, b) = std::llround(std::sqrt(dx * dx + dy * dy));
            }
    } else if (ewt == "EXPLICIT") {
        std::size_t expect = 0;
        if (ewf == "FULL_MATRIX") {
            inst.source = TspSource::explicit_full;
            expect = static_cast<std::size_t>(n) * n;
        } else if (ewf == "UPPER_ROW") {
            inst.source = TspSource::explicit_upper_row;
            expect = static_cast<std::size_t>(n) * (n - 1) / 2;
        } else if (ewf == "LOWER_DIAG_ROW") {
            inst.source = TspSource::explicit_lower_diag_row;
            expect = static_cast<std::size_t>(n) * (n + 1) / 2;
        } else if (ewf == "UPPER_DIAG_ROW") {
            inst.source = TspSource::explicit_upper_diag_row;
            expect = static_cast<std::size_t>(n) * (n + 1) / 2;
        } else {
            fail(ErrorCode::parse, "unsupported EDGE_WEIGHT_FORMAT '" + ewf + "'");
        }
        if (weights.size() != expect)
            fail(ErrorCode::parse, "EDGE_WEIGHT_SECTION has " +
                                       std::to_string(weights.size()) +
                                       " values, expected " + std::to_string(expect));
        std::size_t idx = 0;
        auto next = [&] { return weights[idx++]; };
        switch (inst.source) {
        case TspSource::explicit_full:
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) inst.dist.at(a, b) = next();
            break;
        case TspSource::explicit_upper_row:
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    std::int64_t v = next();
                    inst.dist.at(a, b) = v;
                    inst.dist.at(b, a) = v;
                }
            break;
        case TspSource::explicit_lower_diag_row:
            for (int a = 0; a < n; ++a)
                for (int b = 0; b <= a; ++b) {
                    std::int64_t v = next();
                    inst.dist.at(a, b) = v;
                    inst.dist.at(b, a) = v;
                }
            break;
        case TspSource::explicit_upper_diag_row:
            for (int a = 0; a < n; ++a)
                for (int b = a; b < n; ++b) {
                    std::int64_t v = next();
                    inst.dist.at(a, b) = v;
                    inst.dist.at(b, a) = v;
                }
            break;
        default:
            break;
        }
    } else {
        fail(ErrorCode::parse, "unsupported EDGE_WEIGHT_TYPE '" + ewt + "'");
    }

    inst.validate();
    return inst;
}

QapInstance parse_qaplib(std::string_view text, std::string name) {
    std::istringstream in{std::string(text)};
    std::vector<std::int64_t> toks;
    std::string tok;
    while (in >> tok) toks.push_back(parse_int_token(tok, "QAPLIB value"));
    if (toks.empty()) fail(ErrorCode::parse, "empty QAPLIB input");

    std::int64_t n64 = toks[0];
    if (n64 < 2 || n64 > 10000)
        fail(ErrorCode::parse, "invalid QAPLIB dimension " + std::to_string(n64));
    const int n = static_cast<int>(n64);
    const std::size_t need = 1 + 2 * static_cast<std::size_t>(n) * n;
    if (toks.size() != need)
        fail(ErrorCode::parse, "QAPLIB token count " + std::to_string(toks.size()) +
                                   ", expected " + std::to_string(need));

    QapInstance inst;
    inst.name = std::move(name);
    inst.n = n;
    inst.flow = SquareMatrix(n);
    inst.dist = SquareMatrix(n);
    std::size_t idx = 1;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inst.flow.at(r, c) = toks[idx++];
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inst.dist.at(r, c) = toks[idx++];
    inst.validate();
    return inst;
}

ProblemInstance random_instance(ProblemKind kind, int n, std::uint64_t seed,
                                std::int64_t max_value) {
    if (max_value < 1) fail(ErrorCode::argument, "max_value must be >= 1");
    SplitMix64 rng(seed);
    if (kind == ProblemKind::tsp) {
        if (n < 3 || n > 10)
            fail(ErrorCode::argument, "random TSP instance needs 3 <= n <= 10");
        TspInstance inst;
        inst.name = "random-tsp-" + std::to_string(n) + "-" + std::to_string(seed);
        inst.n = n;
        inst.dist = SquareMatrix(n);
        inst.source = TspSource::explicit_full;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                std::int64_t v = 1 + static_cast<std::int64_t>(
                                         rng.below(static_cast<std::uint64_t>(max_value)));
                inst.dist.at(a, b) = v;
                inst.dist.at(b, a) = v;
            }
        inst.validate();
        return inst;
    }
    if (n < 2 || n > 10)
        fail(ErrorCode::argument, "random QAP instance needs 2 <= n <= 10");
    QapInstance inst;
    inst.name = "random-qap-" + std::to_string(n) + "-" + std::to_string(seed);
    inst.n = n;
    inst.flow = SquareMatrix(n);
    inst.dist = SquareMatrix(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (r == c) continue;
            inst.flow.at(r, c) = static_cast<std::int64_t>(
                rng.below(static_cast<std::uint64_t>(max_value) + 1));
            inst.dist.at(r, c) = static_cast<std::int64_t>(
                rng.below(static_cast<std::uint64_t>(max_value) + 1));
        }
    inst.validate();
    return inst;
}

std::string to_tsplib_full_matrix(const TspInstance& inst) {
    std::ostringstream out;
    out << "NAME: " << (inst.name.empty() ? "unnamed" : inst.name) << "\n"
        << "TYPE: TSP\n"
        << "DIMENSION: " << inst.n << "\n"
        << "EDGE_WEIGHT_TYPE: EXPLICIT\n"
        << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
        << "EDGE_WEIGHT_SECTION\n";
    for (int r = 0; r < inst.n; ++r) {
        for (int c = 0; c < inst.n; ++c) {
            if (c) out << ' ';
            out << inst.dist.at(r, c);
        }
        out << "\n";
    }
    out << "EOF\n";
    return out.str();
}

std::string to_qaplib_text(const QapInstance& inst) {
    std::ostringstream out;
    out << inst.n << "\n\n";
    for (const SquareMatrix* m : {&inst.flow, &inst.dist}) {
        for (int r = 0; r < inst.n; ++r) {
            for (int c = 0; c < inst.n; ++c) {
                if (c) out << ' ';
                out << m->at(r, c);
            }
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

std::string instance_summary(const ProblemInstance& inst) {
    std::ostringstream out;
    if (kind_of(inst) == ProblemKind::tsp) {
        const auto& t = std::get<TspInstance>(inst);
        std::int64_t maxd = 0, sum = 0;
        for (int r = 0; r < t.n; ++r)
            for (int c = 0; c < t.n; ++c) {
                maxd = std::max(maxd, t.dist.at(r, c));
                sum = checked_add(sum, t.dist.at(r, c));
            }
        out << "kind: tsp\nname: " << t.name << "\ncities: " << t.n
            << "\nvariables: " << static_cast<std::int64_t>(t.n - 1) * (t.n - 1)
            << "\nmax_distance: " << maxd << "\ntotal_distance: " << sum << "\n";
    } else {
        const auto& q = std::get<QapInstance>(inst);
        std::int64_t sumf = 0, sumd = 0;
        for (int r = 0; r < q.n; ++r)
            for (int c = 0; c < q.n; ++c) {
                sumf = checked_add(sumf, q.flow.at(r, c));
                sumd = checked_add(sumd, q.dist.at(r, c));
            }
        out << "kind: qap\nname: " << q.name << "\nfacilities: " << q.n
            << "\nvariables: " << static_cast<std::int64_t>(q.n) * q.n
            << "\nflow_total: " << sumf << "\ndistance_total: " << sumd << "\n";
    }
    return out.str();
}

} // namespace permqubo
