#include "stabland/pauli.hpp"

#include <stdexcept>

namespace stabland {
namespace {

constexpr unsigned label_bits(char label) {
    switch (label) {
        case 'I': return 0b00;
        case 'X': return 0b01;
        case 'Z': return 0b10;
        case 'Y': return 0b11;
        default: return 0b100;
    }
}

constexpr char bits_label(unsigned bits) { return "IXZY"[bits & 3U]; }

unsigned checked_bits(char label) {
    unsigned bits = label_bits(label);
    if (bits > 3) throw std::invalid_argument(std::string("not a Pauli label: ") + label);
    return bits;
}

}  // namespace

bool is_pauli_label(char label) { return label_bits(label) <= 3; }

char mul_labels(char a, char b) { return bits_label(checked_bits(a) ^ checked_bits(b)); }

bool labels_anticommute(char a, char b) {
    unsigned x = checked_bits(a), y = checked_bits(b);
    bool ax = x & 1U, az = x & 2U, bx = y & 1U, bz = y & 2U;
    return (ax && bz) != (az && bx);
}

PauliOperator::PauliOperator(BitVector x, BitVector z) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) throw std::invalid_argument("PauliOperator: X and Z parts differ in length");
}

PauliOperator PauliOperator::single(std::size_t num_qubits, std::size_t qubit, char label) {
    if (qubit >= num_qubits) throw std::out_of_range("PauliOperator::single: qubit out of range");
    PauliOperator out(num_qubits);
    out.apply(qubit, label);
    return out;
}

PauliOperator PauliOperator::from_symplectic(const BitVector& v) {
    if (v.size() % 2 != 0) throw std::invalid_argument("symplectic vector must have even length");
    std::size_t n = v.size() / 2;
    return PauliOperator(v.slice(0, n), v.slice(n, n));
}

char PauliOperator::at(std::size_t qubit) const {
    return bits_label((x_.get(qubit) ? 1U : 0U) | (z_.get(qubit) ? 2U : 0U));
}

void PauliOperator::apply(std::size_t qubit, char label) {
    unsigned bits = checked_bits(label);
    if (bits & 1U) x_.flip(qubit);
    if (bits & 2U) z_.flip(qubit);
}

std::size_t PauliOperator::weight() const { return simd::or_popcount(x_.words(), z_.words()); }

std::vector<std::size_t> PauliOperator::support() const {
    std::vector<std::size_t> out;
    auto xw = x_.words();
    auto zw = z_.words();
    for (std::size_t w = 0; w < xw.size(); ++w) {
        Word word = xw[w] | zw[w];
        while (word != 0) {
            out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& other) {
    if (other.num_qubits() != num_qubits()) throw std::invalid_argument("PauliOperator: qubit count mismatch");
    x_ ^= other.x_;
    z_ ^= other.z_;
    return *this;
}

std::string PauliOperator::to_string() const {
    std::string out;
    for (std::size_t q : support()) {
        if (!out.empty()) out += ' ';
        out += at(q);
        out += std::to_string(q);
    }
    return out.empty() ? "I" : out;
}

PauliOperator pauli_mul(const PauliOperator& a, const PauliOperator& b) { return a * b; }

bool commutes(const PauliOperator& a, const PauliOperator& b) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("commutes: qubit count mismatch");
    return !simd::symplectic_parity(a.xbits().words(), a.zbits().words(), b.xbits().words(),
                                    b.zbits().words());
}

std::pair<std::size_t, std::vector<std::size_t>> weight_and_support(const PauliOperator& a) {
    auto support = a.support();
    return {support.size(), std::move(support)};
}

}  // namespace stabland
