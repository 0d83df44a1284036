#include "bcc/io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "bcc/errors.hpp"

namespace bcc {

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next line, stripped of a trailing '\r'. Returns false at EOF.
    bool next(std::string& out) {
        if (!std::getline(in_, out)) return false;
        ++line_;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        return true;
    }

    std::uint64_t line() const { return line_; }

private:
    std::istream& in_;
    std::uint64_t line_ = 0;
};

std::uint64_t parse_count(const std::string& token, std::uint64_t line, const char* what) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw InputError(std::string("expected a nonnegative integer for ") + what, line);
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (errno != 0 || *end != '\0' || v > (1ull << 40))
        throw InputError(std::string(what) + " out of range", line);
    return v;
}

BinaryVector parse_bits_line(const std::string& line, std::uint64_t line_no,
                             std::uint64_t want_len) {
    if (line.size() != want_len) {
        throw InputError("expected exactly " + std::to_string(want_len) + " characters, got " +
                             std::to_string(line.size()),
                         line_no, line.size() < want_len ? line.size() + 1 : want_len + 1);
    }
    for (std::size_t i = 0; i < line.size(); ++i)
        if (line[i] != '0' && line[i] != '1')
            throw InputError("illegal character; expected 0 or 1", line_no, i + 1);
    return BinaryVector::from_string(line);
}

}  // namespace

Dataset parse_dataset(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw InputError("empty input; expected header \"n m\"", 1);
    std::istringstream hs(line);
    std::string tn, tm, extra;
    if (!(hs >> tn >> tm) || (hs >> extra))
        throw InputError("malformed header; expected \"n m\"", reader.line());
    std::uint64_t n = parse_count(tn, reader.line(), "n");
    std::uint64_t m = parse_count(tm, reader.line(), "m");
    if (n * m > (1ull << 33))
        throw InputError("dataset too large", reader.line());
    Dataset ds(static_cast<std::uint32_t>(m));
    for (std::uint64_t v = 0; v < n; ++v) {
        if (!reader.next(line))
            throw InputError("unexpected end of file; expected " + std::to_string(n) +
                                 " vector lines",
                             reader.line() + 1);
        ds.add(parse_bits_line(line, reader.line(), m));
    }
    while (reader.next(line))
        if (!line.empty())
            throw InputError("trailing content after the declared vectors", reader.line());
    return ds;
}

namespace {

Relation parse_relation_block(LineReader& reader, std::uint64_t tuples, std::uint64_t k) {
    if (tuples == 0) throw InputError("empty relation", reader.line());
    std::vector<std::uint32_t> masks;
    masks.reserve(tuples);
    std::string line;
    for (std::uint64_t t = 0; t < tuples; ++t) {
        if (!reader.next(line))
            throw InputError("unexpected end of file in relation block", reader.line() + 1);
        BinaryVector bits = parse_bits_line(line, reader.line(), k);
        std::uint32_t mask = 0;
        for (std::uint32_t j = 0; j < k; ++j)
            if (bits.get(j)) mask |= RelationTuple::bit(static_cast<std::uint32_t>(k), j + 1);
        for (std::uint32_t seen : masks)
            if (seen == mask)
                throw InputError("duplicate tuple in relation", reader.line());
        masks.push_back(mask);
    }
    return Relation(static_cast<std::uint32_t>(k), std::move(masks));
}

}  // namespace

RelationFamily parse_relations(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw InputError("empty input; expected SHARED or PERCOORD header", 1);
    std::istringstream hs(line);
    std::string kind;
    hs >> kind;
    if (kind == "SHARED") {
        std::string tk, tt, extra;
        if (!(hs >> tk >> tt) || (hs >> extra))
            throw InputError("malformed header; expected \"SHARED k t\"", reader.line());
        std::uint64_t k = parse_count(tk, reader.line(), "k");
        std::uint64_t t = parse_count(tt, reader.line(), "t");
        if (k < 1 || k > kMaxArity)
            throw InputError("arity k must be between 1 and " + std::to_string(kMaxArity),
                             reader.line());
        Relation rel = parse_relation_block(reader, t, k);
        while (reader.next(line))
            if (!line.empty()) throw InputError("trailing content after the relation", reader.line());
        // Shared families defer the coordinate count to the dataset they are
        // used with; coordinate count 0 means "any".
        return RelationFamily::shared(0, std::move(rel));
    }
    if (kind == "PERCOORD") {
        std::string tm, tk, extra;
        if (!(hs >> tm >> tk) || (hs >> extra))
            throw InputError("malformed header; expected \"PERCOORD m k\"", reader.line());
        std::uint64_t m = parse_count(tm, reader.line(), "m");
        std::uint64_t k = parse_count(tk, reader.line(), "k");
        if (m < 1) throw InputError("PERCOORD needs at least one coordinate", reader.line());
        if (k < 1 || k > kMaxArity)
            throw InputError("arity k must be between 1 and " + std::to_string(kMaxArity),
                             reader.line());
        std::vector<Relation> rels;
        rels.reserve(m);
        for (std::uint64_t i = 0; i < m; ++i) {
            if (!reader.next(line))
                throw InputError("unexpected end of file; expected a tuple count", reader.line() + 1);
            std::istringstream bs(line);
            std::string tt;
            if (!(bs >> tt) || (bs >> extra))
                throw InputError("expected a bare tuple count line", reader.line());
            std::uint64_t t = parse_count(tt, reader.line(), "t_i");
            rels.push_back(parse_relation_block(reader, t, k));
        }
        while (reader.next(line))
            if (!line.empty()) throw InputError("trailing content after the relations", reader.line());
        return RelationFamily::per_coordinate(std::move(rels));
    }
    throw InputError("unknown relation header kind \"" + kind + "\"", reader.line());
}

BinaryMatrix parse_matrix(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw InputError("empty input; expected header \"m n\"", 1);
    std::istringstream hs(line);
    std::string tm, tn, extra;
    if (!(hs >> tm >> tn) || (hs >> extra))
        throw InputError("malformed header; expected \"m n\"", reader.line());
    std::uint64_t m = parse_count(tm, reader.line(), "m");
    std::uint64_t n = parse_count(tn, reader.line(), "n");
    if (m == 0 || n == 0) throw InputError("matrix dimensions must be positive", reader.line());
    if (m * n > (1ull << 33)) throw InputError("matrix too large", reader.line());
    BinaryMatrix a(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
    for (std::uint64_t r = 0; r < m; ++r) {
        if (!reader.next(line))
            throw InputError("unexpected end of file; expected " + std::to_string(m) + " rows",
                             reader.line() + 1);
        BinaryVector bits = parse_bits_line(line, reader.line(), n);
        for (std::uint64_t ccol = 0; ccol < n; ++ccol)
            a.set(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(ccol),
                  bits.get(static_cast<std::uint32_t>(ccol)));
    }
    while (reader.next(line))
        if (!line.empty()) throw InputError("trailing content after the declared rows", reader.line());
    return a;
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    return in;
}

nlohmann::ordered_json solution_json(const Solution& sol, const std::string& mode) {
    nlohmann::ordered_json j;
    j["cost"] = sol.cost;
    auto centers = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < sol.centers.size(); ++i)
        centers.push_back(sol.centers[i].to_string());
    j["centers"] = std::move(centers);
    j["index_set"] = sol.index_set.members();
    j["assignment"] = sol.assignment.label;
    j["seed"] = sol.seed;
    j["trials_used"] = sol.trials_used;
    j["mode"] = mode;
    j["truncated"] = sol.truncated;
    return j;
}

nlohmann::ordered_json matrix_rows(const BinaryMatrix& b) {
    auto rows = nlohmann::ordered_json::array();
    for (std::uint32_t r = 0; r < b.rows(); ++r) {
        std::string row(b.cols(), '0');
        for (std::uint32_t ccol = 0; ccol < b.cols(); ++ccol)
            if (b.get(r, ccol)) row[ccol] = '1';
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Dataset parse_dataset_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_dataset(in);
}

RelationFamily parse_relations_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_relations(in);
}

BinaryMatrix parse_matrix_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_matrix(in);
}

std::string emit_solution(const Solution& sol, const std::string& mode) {
    return solution_json(sol, mode).dump(2) + "\n";
}

std::string emit_solution_with_matrix(const Solution& sol, const std::string& mode,
                                      const BinaryMatrix& b, std::uint64_t matrix_cost) {
    nlohmann::ordered_json j = solution_json(sol, mode);
    j["matrix_cost"] = matrix_cost;
    j["matrix"] = matrix_rows(b);
    return j.dump(2) + "\n";
}

std::string emit_matrix_result(const BinaryMatrix& b, std::uint64_t cost,
                               std::uint32_t column) {
    nlohmann::ordered_json j;
    j["cost"] = cost;
    j["column"] = column;
    j["matrix"] = matrix_rows(b);
    return j.dump(2) + "\n";
}

}  // namespace bcc
