#include "zcssc/dictionary.hpp"

#include <cctype>

#include "zcssc/errors.hpp"
#include "zcssc/zc_core.hpp"

namespace zcssc {

Message Message::from_string(const std::string& s) {
    Message m;
    for (char ch : s) {
        if (ch == '0' || ch == '1') {
            m.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            throw ParameterError(std::string("invalid bit character '") + ch + "'");
        }
    }
    return m;
}

std::string Message::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

DictionarySpec DictionarySpec::build(int prime_length, int sparsity, int target_info_bits) {
    if (!is_prime(static_cast<std::uint64_t>(prime_length))) {
        throw ParameterError("dictionary length must be prime, got " + std::to_string(prime_length));
    }
    if (sparsity < 1) throw ParameterError("sparsity L must be >= 1");
    if (target_info_bits < sparsity || target_info_bits % sparsity != 0) {
        throw ParameterError("info bits " + std::to_string(target_info_bits) +
                             " not a positive multiple of L = " + std::to_string(sparsity));
    }
    const int b = target_info_bits / sparsity;
    if (b > 40) throw CapacityError("section of 2^" + std::to_string(b) + " columns is unsupported");

    const std::uint64_t section = std::uint64_t{1} << b;
    const auto p = static_cast<std::uint64_t>(prime_length);
    const std::uint64_t q = (section + p - 1) / p;
    // data roots 1..L*Q plus the reserved indicator root must fit in 1..P-1
    if (q * static_cast<std::uint64_t>(sparsity) + 1 > p - 1) {
        throw CapacityError("P=" + std::to_string(prime_length) + ", L=" + std::to_string(sparsity) +
                            ", K=" + std::to_string(target_info_bits) + " needs " +
                            std::to_string(q * static_cast<std::uint64_t>(sparsity)) +
                            " data roots + 1 indicator root, only " + std::to_string(p - 1) +
                            " available");
    }

    DictionarySpec spec;
    spec.length_ = prime_length;
    spec.sparsity_ = sparsity;
    spec.bits_per_section_ = b;
    spec.roots_per_section_ = static_cast<int>(q);
    spec.indicator_root_ = prime_length - 1;
    return spec;
}

int DictionarySpec::section_of_root(int root) const {
    if (root < 1 || root > sparsity_ * roots_per_section_) return -1;
    return (root - 1) / roots_per_section_;
}

std::vector<int> DictionarySpec::data_roots() const {
    std::vector<int> roots;
    roots.reserve(static_cast<std::size_t>(sparsity_ * roots_per_section_));
    for (int r = 1; r <= sparsity_ * roots_per_section_; ++r) roots.push_back(r);
    return roots;
}

int DictionarySpec::valid_shift_count(int root) const {
    const int section = section_of_root(root);
    if (section < 0) return 0;
    const std::uint64_t base = static_cast<std::uint64_t>(root - first_root(section)) *
                               static_cast<std::uint64_t>(length_);
    const std::uint64_t size = section_size();
    if (base >= size) return 0;
    const std::uint64_t remaining = size - base;
    return remaining >= static_cast<std::uint64_t>(length_) ? length_ : static_cast<int>(remaining);
}

SparseSelection map_message(const DictionarySpec& spec, const Message& m) {
    const int b = spec.bits_per_section();
    if (static_cast<int>(m.bits.size()) != spec.info_bits()) {
        throw ParameterError("message has " + std::to_string(m.bits.size()) + " bits, expected " +
                             std::to_string(spec.info_bits()));
    }
    SparseSelection sel;
    sel.pairs.reserve(static_cast<std::size_t>(spec.sparsity()));
    const auto p = static_cast<std::uint64_t>(spec.length());
    for (int l = 0; l < spec.sparsity(); ++l) {
        std::uint64_t d = 0;
        for (int i = 0; i < b; ++i) d = (d << 1) | (m.bits[static_cast<std::size_t>(l * b + i)] & 1u);
        sel.pairs.push_back({spec.first_root(l) + static_cast<int>(d / p), static_cast<int>(d % p)});
    }
    return sel;
}

Message unmap_selection(const DictionarySpec& spec, const SparseSelection& sel) {
    if (static_cast<int>(sel.pairs.size()) != spec.sparsity()) {
        throw DecodeInvalid("selection has " + std::to_string(sel.pairs.size()) + " pairs, expected " +
                            std::to_string(spec.sparsity()));
    }
    const int b = spec.bits_per_section();
    Message m;
    m.bits.resize(static_cast<std::size_t>(spec.info_bits()));
    for (int l = 0; l < spec.sparsity(); ++l) {
        const auto [root, shift] = sel.pairs[static_cast<std::size_t>(l)];
        if (root < spec.first_root(l) || root > spec.last_root(l) || shift < 0 || shift >= spec.length()) {
            throw DecodeInvalid("pair (" + std::to_string(root) + ", " + std::to_string(shift) +
                                ") outside section " + std::to_string(l));
        }
        const std::uint64_t d = static_cast<std::uint64_t>(root - spec.first_root(l)) *
                                    static_cast<std::uint64_t>(spec.length()) +
                                static_cast<std::uint64_t>(shift);
        if (d >= spec.section_size()) {
            throw DecodeInvalid("section " + std::to_string(l) + " index " + std::to_string(d) +
                                " >= 2^" + std::to_string(b));
        }
        for (int i = 0; i < b; ++i) {
            m.bits[static_cast<std::size_t>(l * b + i)] = static_cast<std::uint8_t>((d >> (b - 1 - i)) & 1u);
        }
    }
    return m;
}

RootShift column_of(const DictionarySpec& spec, std::int64_t n) {
    const std::int64_t p = spec.length();
    if (n < 0 || n >= (p - 1) * p) {
        throw ParameterError("column index " + std::to_string(n) + " outside [0, " +
                             std::to_string((p - 1) * p) + ")");
    }
    return {1 + static_cast<int>(n / p), static_cast<int>(n % p)};
}

}  // namespace zcssc
