#include "stabland/code.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

namespace stabland {
namespace {

constexpr std::size_t kExhaustiveCheckMaxGenerators = 1024;
constexpr std::size_t kRankMaxColumns = 8192;

std::size_t anticommuting_overlap(const std::vector<std::pair<std::size_t, char>>& a,
                                  const std::vector<std::pair<std::size_t, char>>& b) {
    std::size_t count = 0;
    for (const auto& [qa, la] : a)
        for (const auto& [qb, lb] : b)
            if (qa == qb && labels_anticommute(la, lb)) ++count;
    return count;
}

}  // namespace

int label_slot(char label) {
    switch (label) {
        case 'X': return 0;
        case 'Y': return 1;
        case 'Z': return 2;
        default: throw std::invalid_argument(std::string("not a non-identity Pauli label: ") + label);
    }
}

// ---------------------------------------------------------------- Syndrome

Syndrome Syndrome::from_flips(std::vector<GeneratorId> flips) {
    std::sort(flips.begin(), flips.end());
    std::vector<GeneratorId> out;
    out.reserve(flips.size());
    for (std::size_t i = 0; i < flips.size();) {
        std::size_t j = i;
        while (j < flips.size() && flips[j] == flips[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(flips[i]);
        i = j;
    }
    return Syndrome(std::move(out));
}

bool Syndrome::contains(GeneratorId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

Syndrome& Syndrome::operator^=(const Syndrome& other) {
    std::vector<GeneratorId> out;
    out.reserve(ids_.size() + other.ids_.size());
    std::set_symmetric_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                                  std::back_inserter(out));
    ids_ = std::move(out);
    return *this;
}

bool Syndrome::is_subset_of(const Syndrome& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

BitVector Syndrome::to_bits(std::size_t num_generators) const {
    BitVector out(num_generators);
    for (GeneratorId id : ids_) out.set(id, true);
    return out;
}

Syndrome Syndrome::from_bits(const BitVector& bits) {
    std::vector<GeneratorId> ids;
    bits.for_each_set_bit([&](std::size_t i) { ids.push_back(static_cast<GeneratorId>(i)); });
    return Syndrome(std::move(ids));
}

// ------------------------------------------------------------ CodeInstance

struct CodeInstance::Caches {
    std::once_flag syndrome_once;
    std::once_flag stabilizer_once;
    std::once_flag reducer_once;
    BitMatrix syndrome;
    BitMatrix stabilizer;
    std::unique_ptr<RowReducer> reducer;
};

CodeInstance::CodeInstance(std::shared_ptr<const CodeSpec> spec, LatticeGeometry geometry)
    : spec_(std::move(spec)), geometry_(geometry), caches_(std::make_shared<Caches>()) {
    const int q = geometry_.qubits_per_site();
    flip_table_.resize(static_cast<std::size_t>(q) * 3);
    for (int sub = 0; sub < q; ++sub) {
        for (char label : {'X', 'Y', 'Z'}) {
            auto& entries = flip_table_[static_cast<std::size_t>(sub * 3 + label_slot(label))];
            for (std::size_t s = 0; s < spec_->species.size(); ++s)
                for (const GeneratorTerm& t : spec_->species[s].terms)
                    if (labels_anticommute(t.label[static_cast<std::size_t>(sub)], label))
                        entries.push_back({t.offset, static_cast<int>(s)});
        }
    }
}

CodeInstance CodeInstance::build(const CodeSpec& spec, int size, Verification verify) {
    validate(spec);
    CodeInstance code(std::make_shared<const CodeSpec>(spec), LatticeGeometry(spec.dim, size, spec.qubits_per_site));
    if (code.num_generators() > std::numeric_limits<GeneratorId>::max())
        throw std::invalid_argument("lattice too large for 32-bit generator ids");
    if (verify == Verification::kFull) {
        FrustrationReport report = check_frustration_free(code);
        if (!report.commuting) {
            auto [a, b] = *report.witness;
            throw NonCommutingSpec("code '" + spec.name + "' generators " + std::to_string(a) + " and " +
                                       std::to_string(b) + " anticommute at L=" + std::to_string(size),
                                   a, b);
        }
    }
    return code;
}

GeneratorId CodeInstance::generator_id(const Coord& cube, int species) const {
    return static_cast<GeneratorId>(geometry_.site_index(cube) * num_species() + static_cast<std::size_t>(species));
}

Defect CodeInstance::defect(GeneratorId id) const {
    return {geometry_.site_coord(id / num_species()), static_cast<int>(id % num_species())};
}

std::vector<Defect> CodeInstance::defects(const Syndrome& s) const {
    std::vector<Defect> out;
    out.reserve(s.size());
    for (GeneratorId id : s) out.push_back(defect(id));
    return out;
}

Syndrome CodeInstance::syndrome_from_defects(std::span<const Defect> defects) const {
    std::vector<GeneratorId> ids;
    for (const Defect& d : defects) ids.push_back(generator_id(d.cube, d.species));
    return Syndrome::from_flips(std::move(ids));
}

std::vector<Coord> CodeInstance::occupied_cubes(const Syndrome& s) const {
    std::vector<Coord> out;
    std::size_t last = static_cast<std::size_t>(-1);
    for (GeneratorId id : s) {
        std::size_t site = id / num_species();
        if (site != last) out.push_back(geometry_.site_coord(site));
        last = site;
    }
    return out;
}

std::vector<std::pair<std::size_t, char>> CodeInstance::generator_terms(GeneratorId id) const {
    const Defect d = defect(id);
    std::vector<std::pair<std::size_t, char>> out;
    for (const GeneratorTerm& t : spec_->species[static_cast<std::size_t>(d.species)].terms) {
        Coord site = geometry_.add(d.cube, t.offset);
        for (int sub = 0; sub < geometry_.qubits_per_site(); ++sub) {
            char label = t.label[static_cast<std::size_t>(sub)];
            if (label != 'I') out.emplace_back(geometry_.qubit_index({site, sub}), label);
        }
    }
    return out;
}

PauliOperator CodeInstance::generator(GeneratorId id) const {
    PauliOperator out(num_qubits());
    for (const auto& [q, label] : generator_terms(id)) out.apply(q, label);
    return out;
}

std::vector<GeneratorId> CodeInstance::flips(std::size_t qubit, char label) const {
    std::vector<GeneratorId> out;
    for_each_flip(qubit, label, [&](GeneratorId g) { out.push_back(g); });
    std::sort(out.begin(), out.end());
    return out;
}

const BitMatrix& CodeInstance::stabilizer_matrix() const {
    std::call_once(caches_->stabilizer_once, [this] {
        const std::size_t n = num_qubits();
        BitMatrix m(num_generators(), 2 * n);
        for (GeneratorId g = 0; g < num_generators(); ++g) {
            for (const auto& [q, label] : generator_terms(g)) {
                if (label == 'X' || label == 'Y') m.flip(g, q);
                if (label == 'Z' || label == 'Y') m.flip(g, n + q);
            }
        }
        caches_->stabilizer = std::move(m);
    });
    return caches_->stabilizer;
}

const BitMatrix& CodeInstance::syndrome_matrix() const {
    std::call_once(caches_->syndrome_once, [this] {
        const std::size_t n = num_qubits();
        BitMatrix m(num_generators(), 2 * n);
        for (GeneratorId g = 0; g < num_generators(); ++g) {
            for (const auto& [q, label] : generator_terms(g)) {
                if (label == 'X' || label == 'Y') m.flip(g, n + q);
                if (label == 'Z' || label == 'Y') m.flip(g, q);
            }
        }
        caches_->syndrome = std::move(m);
    });
    return caches_->syndrome;
}

const RowReducer& CodeInstance::stabilizer_reducer() const {
    std::call_once(caches_->reducer_once,
                   [this] { caches_->reducer = std::make_unique<RowReducer>(stabilizer_matrix()); });
    return *caches_->reducer;
}

PauliOperator CodeInstance::single(const QubitIndex& q, char label) const {
    QubitIndex wrapped{geometry_.wrap(q.site), q.sub};
    return PauliOperator::single(num_qubits(), geometry_.qubit_index(wrapped), label);
}

PauliOperator CodeInstance::on_site(const Coord& site, std::string_view labels) const {
    if (static_cast<int>(labels.size()) != geometry_.qubits_per_site())
        throw std::invalid_argument("site label must have one character per qubit");
    PauliOperator out(num_qubits());
    for (int sub = 0; sub < geometry_.qubits_per_site(); ++sub)
        out.apply(geometry_.qubit_index({geometry_.wrap(site), sub}), labels[static_cast<std::size_t>(sub)]);
    return out;
}

// ------------------------------------------------------------- operations

Syndrome syndrome_of(const CodeInstance& code, const PauliOperator& e) {
    if (e.num_qubits() != code.num_qubits()) throw std::invalid_argument("syndrome_of: operator size mismatch");
    std::vector<GeneratorId> flips;
    for (std::size_t q : e.support())
        code.for_each_flip(q, e.at(q), [&](GeneratorId g) { flips.push_back(g); });
    return Syndrome::from_flips(std::move(flips));
}

Syndrome syndrome_of_dense(const CodeInstance& code, const PauliOperator& e) {
    if (e.num_qubits() != code.num_qubits()) throw std::invalid_argument("syndrome_of: operator size mismatch");
    return Syndrome::from_bits(code.syndrome_matrix().multiply(e.symplectic()));
}

FrustrationReport check_frustration_free(const CodeInstance& code) {
    FrustrationReport report;
    const std::size_t m = code.num_generators();
    if (m <= kExhaustiveCheckMaxGenerators) {
        report.method = "exhaustive";
        std::vector<PauliOperator> gens;
        gens.reserve(m);
        for (GeneratorId g = 0; g < m; ++g) gens.push_back(code.generator(g));
        for (GeneratorId a = 0; a < m && report.commuting; ++a) {
            for (GeneratorId b = a + 1; b < m; ++b) {
                ++report.pairs_checked;
                if (!commutes(gens[a], gens[b])) {
                    report.commuting = false;
                    report.witness = std::make_pair(a, b);
                    break;
                }
            }
        }
    } else {
        // Supports live on single cubes, so only generators on cubes within
        // distance 1 can overlap; translation invariance reduces the check to
        // the generators of one base cube.
        report.method = "overlap";
        const auto& geo = code.geometry();
        std::vector<Coord> base{Coord{}};
        std::vector<Coord> near = geo.neighbourhood(base, 1);
        for (int s = 0; s < static_cast<int>(code.num_species()) && report.commuting; ++s) {
            GeneratorId a = code.generator_id(Coord{}, s);
            auto terms_a = code.generator_terms(a);
            for (const Coord& c : near) {
                for (int t = 0; t < static_cast<int>(code.num_species()); ++t) {
                    GeneratorId b = code.generator_id(c, t);
                    if (b == a) continue;
                    ++report.pairs_checked;
                    if (anticommuting_overlap(terms_a, code.generator_terms(b)) % 2 == 1) {
                        report.commuting = false;
                        report.witness = std::make_pair(std::min(a, b), std::max(a, b));
                        break;
                    }
                }
                if (!report.commuting) break;
            }
        }
    }
    if (report.commuting && 2 * code.num_qubits() <= kRankMaxColumns) {
        std::size_t rank = code.stabilizer_reducer().rank();
        report.stabilizer_rank = rank;
        report.logical_qubits = code.num_qubits() - rank;
    }
    return report;
}

PauliOperator translate_operator(const CodeInstance& code, const PauliOperator& e, const Coord& shift) {
    const auto& geo = code.geometry();
    PauliOperator out(code.num_qubits());
    for (std::size_t q : e.support()) {
        QubitIndex idx = geo.qubit(q);
        idx.site = geo.add(idx.site, shift);
        out.apply(geo.qubit_index(idx), e.at(q));
    }
    return out;
}

Syndrome translate_syndrome(const CodeInstance& code, const Syndrome& s, const Coord& shift) {
    std::vector<GeneratorId> ids;
    ids.reserve(s.size());
    for (GeneratorId id : s) {
        Defect d = code.defect(id);
        ids.push_back(code.generator_id(code.geometry().add(d.cube, shift), d.species));
    }
    return Syndrome::from_flips(std::move(ids));
}

std::pair<std::size_t, std::vector<QubitIndex>> weight_and_support(const LatticeGeometry& g, const PauliOperator& e) {
    std::vector<QubitIndex> out;
    for (std::size_t q : e.support()) out.push_back(g.qubit(q));
    std::sort(out.begin(), out.end());
    return {out.size(), std::move(out)};
}

}  // namespace stabland
