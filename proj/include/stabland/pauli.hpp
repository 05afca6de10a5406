#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stabland/bits.hpp"

namespace stabland {

/// Multi-qubit Pauli operator modulo phase, stored as its X and Z parts.
/// Qubit j carries X for (1,0), Z for (0,1), Y for (1,1).
class PauliOperator {
public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t num_qubits) : x_(num_qubits), z_(num_qubits) {}
    PauliOperator(BitVector x, BitVector z);

    // `label` is one of I, X, Y, Z.
    static PauliOperator single(std::size_t num_qubits, std::size_t qubit, char label);
    // Inverse of symplectic(): first half X, second half Z.
    static PauliOperator from_symplectic(const BitVector& v);

    std::size_t num_qubits() const { return x_.size(); }
    const BitVector& xbits() const { return x_; }
    const BitVector& zbits() const { return z_; }

    char at(std::size_t qubit) const;
    // Multiplies qubit `qubit` by the single-qubit Pauli `label`.
    void apply(std::size_t qubit, char label);

    bool is_identity() const { return x_.none() && z_.none(); }
    std::size_t weight() const;
    std::vector<std::size_t> support() const;

    BitVector symplectic() const { return BitVector::concat(x_, z_); }

    PauliOperator& operator*=(const PauliOperator& other);
    friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) { return a *= b; }

    // Sparse text form, e.g. "X3 Y7" ("I" for the identity).
    std::string to_string() const;

    friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

private:
    BitVector x_;
    BitVector z_;
};

PauliOperator pauli_mul(const PauliOperator& a, const PauliOperator& b);

// Vanishing symplectic inner product.
bool commutes(const PauliOperator& a, const PauliOperator& b);

std::pair<std::size_t, std::vector<std::size_t>> weight_and_support(const PauliOperator& a);

// Single-qubit helpers on labels I/X/Y/Z.
bool is_pauli_label(char label);
char mul_labels(char a, char b);
bool labels_anticommute(char a, char b);

}  // namespace stabland
