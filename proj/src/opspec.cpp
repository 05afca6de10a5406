#include "stabland/opspec.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace stabland {

namespace {

struct SplitSpec {
    std::string head;
    std::optional<std::string> at;
};

SplitSpec split_at(const std::string& spec) {
    const auto pos = spec.find('@');
    if (pos == std::string::npos) return {spec, std::nullopt};
    return {spec.substr(0, pos), spec.substr(pos + 1)};
}

int parse_int(std::string_view text, const std::string& spec) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("bad number in spec '" + spec + "'");
    return value;
}

ErrorPath read_path_file(const CodeInstance& code, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open path file " + path);
    return read_path(in, code);
}

char pauli_label(char c, const std::string& spec) {
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up != 'X' && up != 'Y' && up != 'Z') throw std::invalid_argument("bad Pauli label in spec '" + spec + "'");
    return up;
}

}  // namespace

Coord parse_coord(const std::string& text) {
    Coord c{};
    std::size_t axis = 0, start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        if (axis >= 3) throw std::invalid_argument("too many coordinates in '" + text + "'");
        c[axis++] = parse_int(std::string_view(text).substr(start, end - start), text);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return c;
}

PauliOperator parse_operator(const CodeInstance& code, const std::string& spec, const Coord& fallback) {
    const LatticeGeometry& g = code.geometry();
    if (spec.rfind("file:", 0) == 0) return path_product(code, read_path_file(code, spec.substr(5)));
    if (spec == "identity") return code.identity();

    const auto [head, at] = split_at(spec);
    const Coord u = at ? g.wrap(parse_coord(*at)) : g.wrap(fallback);
    if (head.rfind("single-", 0) == 0) {
        const std::string labels = head.substr(7);
        if (labels.size() != static_cast<std::size_t>(g.qubits_per_site()))
            throw std::invalid_argument("spec '" + spec + "' needs one label per qubit of a site");
        for (char c : labels)
            if (c != 'I') pauli_label(c, spec);
        return code.on_site(u, labels);
    }
    if (head.rfind("pyramid-", 0) == 0) return pyramid_operator(code, parse_int(head.substr(8), spec), u);
    if (head == "zbar") return logical_zbar(code, u);
    if (head.rfind("all-", 0) == 0 && head.size() == 5) {
        const char label = pauli_label(head[4], spec);
        PauliOperator e = code.identity();
        for (std::size_t q = 0; q < code.num_qubits(); ++q) e.apply(q, label);
        return e;
    }
    if (head.rfind("line-", 0) == 0 && head.size() >= 7) {
        const char label = pauli_label(head[5], spec);
        const int sub = parse_int(head.substr(6), spec);
        if (sub < 0 || sub >= g.qubits_per_site()) throw std::invalid_argument("bad sub-qubit in spec '" + spec + "'");
        // "@rest" lists the coordinates after x.
        Coord rest = at ? parse_coord(*at) : Coord{fallback[1], fallback[2], 0};
        PauliOperator e = code.identity();
        for (int x = 0; x < g.size(); ++x) {
            Coord c{x, rest[0], rest[1]};
            for (int a = g.dim(); a < 3; ++a) c[a] = 0;
            e.apply(g.qubit_index({g.wrap(c), sub}), label);
        }
        return e;
    }
    throw std::invalid_argument("unknown operator spec '" + spec + "'");
}

ErrorPath parse_path(const CodeInstance& code, const std::string& spec, const Coord& fallback) {
    if (spec.rfind("file:", 0) == 0) return read_path_file(code, spec.substr(5));
    const auto [head, at] = split_at(spec);
    if (head.rfind("pyramid-", 0) == 0) {
        const Coord u = at ? parse_coord(*at) : fallback;
        return pyramid_path(code, parse_int(head.substr(8), spec), code.geometry().wrap(u));
    }
    const PauliOperator e = parse_operator(code, spec, fallback);
    ErrorPath path;
    for (std::size_t q : e.support()) path.push_back({q, e.at(q)});
    return path;
}

}  // namespace stabland
