#include "stabland/region.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace stabland {

std::vector<char> label_basis(const std::string& alphabet) {
    std::set<char> labels(alphabet.begin(), alphabet.end());
    if (labels.size() >= 2) return {'X', 'Z'};
    return {labels.begin(), labels.end()};
}

RegionSystem::RegionSystem(const CodeInstance& code, std::span<const Coord> sites) : code_(code) {
    build(sites, nullptr);
}

RegionSystem::RegionSystem(const CodeInstance& code, std::span<const Coord> sites, const Syndrome& exempt)
    : code_(code) {
    build(sites, &exempt);
}

void RegionSystem::build(std::span<const Coord> sites, const Syndrome* exempt) {
    const LatticeGeometry& g = code_.geometry();
    std::vector<std::size_t> site_ids;
    site_ids.reserve(sites.size());
    for (const Coord& c : sites) site_ids.push_back(g.site_index(g.wrap(c)));
    std::sort(site_ids.begin(), site_ids.end());
    site_ids.erase(std::unique(site_ids.begin(), site_ids.end()), site_ids.end());

    const std::vector<char> basis = label_basis(code_.error_alphabet());
    const auto q = static_cast<std::size_t>(g.qubits_per_site());
    std::vector<GeneratorId> touched;
    for (std::size_t site : site_ids) {
        for (std::size_t sub = 0; sub < q; ++sub) {
            const std::size_t qubit = site * q + sub;
            first_variable_[qubit] = variables_.size();
            for (char label : basis) {
                variables_.emplace_back(qubit, label);
                code_.for_each_flip(qubit, label, [&](GeneratorId id) { touched.push_back(id); });
            }
        }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (GeneratorId id : touched)
        if (exempt == nullptr || !exempt->contains(id)) rows_.push_back(id);

    matrix_ = BitMatrix(rows_.size(), variables_.size());
    for (std::size_t v = 0; v < variables_.size(); ++v) {
        code_.for_each_flip(variables_[v].first, variables_[v].second, [&](GeneratorId id) {
            auto it = std::lower_bound(rows_.begin(), rows_.end(), id);
            if (it != rows_.end() && *it == id) matrix_.flip(static_cast<std::size_t>(it - rows_.begin()), v);
        });
    }
    solver_ = std::make_shared<const Gf2Solver>(matrix_);
}

bool RegionSystem::covers(const Syndrome& s) const {
    return std::includes(rows_.begin(), rows_.end(), s.begin(), s.end());
}

std::optional<BitVector> RegionSystem::rhs(const Syndrome& s) const {
    if (!covers(s)) return std::nullopt;
    BitVector b(rows_.size());
    for (GeneratorId id : s)
        b.set(static_cast<std::size_t>(std::lower_bound(rows_.begin(), rows_.end(), id) - rows_.begin()), true);
    return b;
}

std::optional<PauliOperator> RegionSystem::solve(const Syndrome& s) const {
    auto b = rhs(s);
    if (!b) return std::nullopt;
    auto x = solver_->solve(*b);
    if (!x) return std::nullopt;
    return to_operator(*x);
}

std::vector<PauliOperator> RegionSystem::kernel() const {
    std::vector<PauliOperator> out;
    const BitMatrix& k = solver_->kernel();
    out.reserve(k.rows());
    for (std::size_t r = 0; r < k.rows(); ++r) out.push_back(to_operator(k.row(r)));
    return out;
}

PauliOperator RegionSystem::to_operator(const BitVector& assignment) const {
    PauliOperator e = code_.identity();
    assignment.for_each_set_bit([&](std::size_t v) { e.apply(variables_[v].first, variables_[v].second); });
    return e;
}

std::optional<BitVector> RegionSystem::to_assignment(const PauliOperator& e) const {
    BitVector out(variables_.size());
    const std::vector<char> basis = label_basis(code_.error_alphabet());
    for (std::size_t qubit : e.support()) {
        auto it = first_variable_.find(qubit);
        if (it == first_variable_.end()) return std::nullopt;
        const char label = e.at(qubit);
        if (basis.size() == 2) {
            if (label != 'Z') out.set(it->second, true);
            if (label != 'X') out.set(it->second + 1, true);
        } else if (label == basis[0]) {
            out.set(it->second, true);
        } else {
            return std::nullopt;
        }
    }
    return out;
}

std::optional<PauliOperator> light_solution(const RegionSystem& sys, const Syndrome& s,
                                            std::span<const PauliOperator> moves, int trials) {
    auto best = sys.solve(s);
    if (!best) return std::nullopt;
    std::size_t best_weight = best->weight();
    const BitVector b = *sys.rhs(s);
    const BitMatrix& a = sys.matrix();
    const BitMatrix columns = a.transpose();
    std::vector<std::size_t> order(a.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(0x6c69676874ULL);
    for (int t = 0; t < trials && best_weight > 1; ++t) {
        std::shuffle(order.begin(), order.end(), rng);
        BitMatrix shuffled(a.cols(), a.rows());
        for (std::size_t j = 0; j < a.cols(); ++j) shuffled.set_row(j, columns.row(order[j]));
        auto y = gf2_solve(shuffled.transpose(), b);
        BitVector x(a.cols());
        y->for_each_set_bit([&](std::size_t j) { x.set(order[j], true); });
        PauliOperator candidate = sys.to_operator(x);
        if (std::size_t w = candidate.weight(); w < best_weight) {
            best = std::move(candidate);
            best_weight = w;
        }
    }
    return reduce_weight(std::move(*best), moves);
}

PauliOperator reduce_weight(PauliOperator e, std::span<const PauliOperator> moves) {
    std::size_t weight = e.weight();
    for (bool improved = true; improved;) {
        improved = false;
        for (const PauliOperator& m : moves) {
            PauliOperator candidate = e * m;
            std::size_t w = candidate.weight();
            if (w < weight) {
                e = std::move(candidate);
                weight = w;
                improved = true;
            }
        }
    }
    return e;
}

}  // namespace stabland
