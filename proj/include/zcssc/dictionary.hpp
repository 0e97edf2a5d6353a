#pragma once

// ZC-QO dictionary layout: section/root ownership, the reserved indicator
// root, and the message <-> (root, shift) mapping.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace zcssc {

struct Message {
    std::vector<std::uint8_t> bits;  // one bit per element, MSB of each section first

    friend bool operator==(const Message&, const Message&) = default;

    // Decode from a '0'/'1' string; whitespace ignored.
    static Message from_string(const std::string& s);
    std::string to_string() const;
};

struct RootShift {
    int root = 0;
    int shift = 0;
    friend auto operator<=>(const RootShift&, const RootShift&) = default;
};

// One (root, shift) pair per section, ordered by section index.
struct SparseSelection {
    std::vector<RootShift> pairs;
    friend auto operator<=>(const SparseSelection&, const SparseSelection&) = default;
};

class DictionarySpec {
public:
    // Section size is 2^b columns; section l (0-based) owns roots
    // [1 + l*Q, (l+1)*Q] with Q = ceil(2^b / P). The indicator root is P-1.
    static DictionarySpec build(int prime_length, int sparsity, int target_info_bits);

    int length() const { return length_; }
    int sparsity() const { return sparsity_; }
    int bits_per_section() const { return bits_per_section_; }
    int roots_per_section() const { return roots_per_section_; }
    int indicator_root() const { return indicator_root_; }
    int info_bits() const { return sparsity_ * bits_per_section_; }
    std::uint64_t section_size() const { return std::uint64_t{1} << bits_per_section_; }
    std::uint64_t column_count() const { return section_size() * static_cast<std::uint64_t>(sparsity_); }

    int first_root(int section) const { return 1 + section * roots_per_section_; }
    int last_root(int section) const { return (section + 1) * roots_per_section_; }

    // Section owning `root`, or -1 if the root is not a data root.
    int section_of_root(int root) const;

    // Roots 1..L*Q in ascending order.
    std::vector<int> data_roots() const;

    // Number of shifts of `root` that map to a valid in-section index (d < 2^b).
    int valid_shift_count(int root) const;

    friend bool operator==(const DictionarySpec&, const DictionarySpec&) = default;

private:
    int length_ = 0;
    int sparsity_ = 0;
    int bits_per_section_ = 0;
    int roots_per_section_ = 0;
    int indicator_root_ = 0;
};

SparseSelection map_message(const DictionarySpec& spec, const Message& m);

// Throws DecodeInvalid when a pair falls outside its section's index space.
Message unmap_selection(const DictionarySpec& spec, const SparseSelection& sel);

// Full dictionary column index n in [0, (P-1)P) -> (1 + n/P, n mod P).
RootShift column_of(const DictionarySpec& spec, std::int64_t n);

}  // namespace zcssc
