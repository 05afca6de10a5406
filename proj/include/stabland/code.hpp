#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabland/code_spec.hpp"
#include "stabland/gf2.hpp"
#include "stabland/lattice.hpp"
#include "stabland/pauli.hpp"

namespace stabland {

using GeneratorId = std::uint32_t;

struct Defect {
    Coord cube{};
    int species = 0;

    friend auto operator<=>(const Defect&, const Defect&) = default;
};

/// Set of flipped generators, kept as sorted unique generator ids.
class Syndrome {
public:
    Syndrome() = default;
    // Ids appearing an even number of times cancel.
    static Syndrome from_flips(std::vector<GeneratorId> flips);
    static Syndrome from_sorted(std::vector<GeneratorId> ids) { return Syndrome(std::move(ids)); }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    bool contains(GeneratorId id) const;
    const std::vector<GeneratorId>& ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    // Symmetric difference.
    Syndrome& operator^=(const Syndrome& other);
    friend Syndrome operator^(Syndrome a, const Syndrome& b) { return a ^= b; }

    bool is_subset_of(const Syndrome& other) const;
    BitVector to_bits(std::size_t num_generators) const;
    static Syndrome from_bits(const BitVector& bits);

    friend bool operator==(const Syndrome&, const Syndrome&) = default;

private:
    explicit Syndrome(std::vector<GeneratorId> ids) : ids_(std::move(ids)) {}
    std::vector<GeneratorId> ids_;
};

/// Thrown when translates of a spec fail to commute.
class NonCommutingSpec : public std::runtime_error {
public:
    NonCommutingSpec(std::string what, GeneratorId a, GeneratorId b)
        : std::runtime_error(std::move(what)), pair_(a, b) {}
    std::pair<GeneratorId, GeneratorId> witness() const { return pair_; }

private:
    std::pair<GeneratorId, GeneratorId> pair_;
};

enum class Verification { kFull, kSkip };

struct FrustrationReport {
    bool commuting = true;
    std::optional<std::pair<GeneratorId, GeneratorId>> witness;
    // "exhaustive" (all pairs) or "overlap" (translates of the base cube's
    // generators against every generator they can touch).
    std::string method;
    std::size_t pairs_checked = 0;
    // Present when the instance is small enough for a dense rank computation.
    std::optional<std::size_t> stabilizer_rank;
    std::optional<std::size_t> logical_qubits;
};

/// A code instantiated on Z_L^D. Generators are produced from the templates
/// on demand; dense matrices are built lazily, once, and shared by copies.
class CodeInstance {
public:
    static CodeInstance build(const CodeSpec& spec, int size, Verification verify = Verification::kFull);

    const CodeSpec& spec() const { return *spec_; }
    const std::string& name() const { return spec_->name; }
    const LatticeGeometry& geometry() const { return geometry_; }
    std::size_t num_qubits() const { return geometry_.num_qubits(); }
    std::size_t num_species() const { return spec_->species.size(); }
    std::size_t num_generators() const { return geometry_.num_sites() * num_species(); }
    const std::string& error_alphabet() const { return spec_->error_alphabet; }

    GeneratorId generator_id(const Coord& cube, int species) const;
    Defect defect(GeneratorId id) const;
    std::vector<Defect> defects(const Syndrome& s) const;
    Syndrome syndrome_from_defects(std::span<const Defect> defects) const;
    // Distinct occupied cubes, sorted by site index.
    std::vector<Coord> occupied_cubes(const Syndrome& s) const;

    // (qubit, label) pairs of one generator.
    std::vector<std::pair<std::size_t, char>> generator_terms(GeneratorId id) const;
    PauliOperator generator(GeneratorId id) const;

    // Generators that anticommute with `label` on `qubit`, ascending.
    std::vector<GeneratorId> flips(std::size_t qubit, char label) const;
    template <typename Fn>
    void for_each_flip(std::size_t qubit, char label, Fn&& fn) const;

    // Rows (g_z | g_x): multiplying a symplectic error vector (e_x | e_z) gives its syndrome.
    const BitMatrix& syndrome_matrix() const;
    // Rows (g_x | g_z).
    const BitMatrix& stabilizer_matrix() const;
    const RowReducer& stabilizer_reducer() const;

    PauliOperator identity() const { return PauliOperator(num_qubits()); }
    PauliOperator single(const QubitIndex& q, char label) const;
    // `labels` has one character per qubit of the site.
    PauliOperator on_site(const Coord& site, std::string_view labels) const;

private:
    struct FlipEntry {
        Coord offset;
        int species;
    };
    struct Caches;

    CodeInstance(std::shared_ptr<const CodeSpec> spec, LatticeGeometry geometry);

    std::shared_ptr<const CodeSpec> spec_;
    LatticeGeometry geometry_;
    // flip_table_[sub * 3 + (X=0, Y=1, Z=2)]
    std::vector<std::vector<FlipEntry>> flip_table_;
    std::shared_ptr<Caches> caches_;
};

int label_slot(char label);

template <typename Fn>
void CodeInstance::for_each_flip(std::size_t qubit, char label, Fn&& fn) const {
    const int q = geometry_.qubits_per_site();
    const std::size_t site = qubit / static_cast<std::size_t>(q);
    const int sub = static_cast<int>(qubit % static_cast<std::size_t>(q));
    const Coord c = geometry_.site_coord(site);
    for (const FlipEntry& e : flip_table_[static_cast<std::size_t>(sub * 3 + label_slot(label))])
        fn(generator_id(geometry_.sub(c, e.offset), e.species));
}

Syndrome syndrome_of(const CodeInstance& code, const PauliOperator& e);
// Same map through the dense syndrome matrix.
Syndrome syndrome_of_dense(const CodeInstance& code, const PauliOperator& e);

FrustrationReport check_frustration_free(const CodeInstance& code);

PauliOperator translate_operator(const CodeInstance& code, const PauliOperator& e, const Coord& shift);
Syndrome translate_syndrome(const CodeInstance& code, const Syndrome& s, const Coord& shift);

std::pair<std::size_t, std::vector<QubitIndex>> weight_and_support(const LatticeGeometry& g, const PauliOperator& e);

}  // namespace stabland
