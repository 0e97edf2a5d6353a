#pragma once

// Codec test-vector files. One record per line:
//
//   <hex message> <P> <L> <K> <alpha> <re_0> <im_0> ... <re_{P-1}> <im_{P-1}>
//
// The message is K bits, left-padded with zeros to a whole number of hex
// digits, most significant bit first. alpha = 1 marks a codeword without
// indication. Reals are printed with 17 significant digits. Lines starting
// with '#' and blank lines are ignored.

#include <iosfwd>
#include <string>
#include <vector>

#include "zcssc/codec.hpp"

namespace zcssc {

struct TestVector {
    Message message;
    int length = 0;  // P
    int sparsity = 0;
    int info_bits = 0;
    double alpha = 1.0;
    ComplexSeq codeword;
};

std::string message_to_hex(const Message& m);
Message message_from_hex(const std::string& hex, int bits);

void write_vectors(std::ostream& out, const std::vector<TestVector>& vectors);
std::vector<TestVector> read_vectors(std::istream& in);

// Encodes `message` for (P, L, K, alpha) with the library encoder.
TestVector make_vector(int length, int sparsity, int info_bits, double alpha, const Message& message);

// Regression set: small dictionaries with and without indication.
std::vector<TestVector> standard_vectors();

}  // namespace zcssc
