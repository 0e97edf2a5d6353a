#include "zcssc/vectors.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "zcssc/errors.hpp"
#include "zcssc/link.hpp"
#include "zcssc/seeding.hpp"

namespace zcssc {

std::string message_to_hex(const Message& m) {
    const std::size_t n = m.bits.size();
    const std::size_t digits = (n + 3) / 4;
    const std::size_t pad = digits * 4 - n;
    std::string hex;
    hex.reserve(digits);
    for (std::size_t d = 0; d < digits; ++d) {
        unsigned v = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            const std::size_t pos = d * 4 + i;  // position in the padded string
            v = (v << 1) | (pos < pad ? 0u : (m.bits[pos - pad] & 1u));
        }
        hex.push_back("0123456789abcdef"[v]);
    }
    return hex;
}

Message message_from_hex(const std::string& hex, int bits) {
    const std::size_t digits = (static_cast<std::size_t>(bits) + 3) / 4;
    if (bits < 0 || hex.size() != digits) {
        throw ParameterError("hex message '" + hex + "' does not hold " + std::to_string(bits) + " bits");
    }
    std::vector<std::uint8_t> padded;
    for (char ch : hex) {
        int v;
        if (ch >= '0' && ch <= '9') v = ch - '0';
        else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
        else throw ParameterError(std::string("invalid hex digit '") + ch + "'");
        for (int i = 3; i >= 0; --i) padded.push_back(static_cast<std::uint8_t>((v >> i) & 1));
    }
    const std::size_t pad = padded.size() - static_cast<std::size_t>(bits);
    for (std::size_t i = 0; i < pad; ++i) {
        if (padded[i]) throw ParameterError("hex message '" + hex + "' has nonzero padding");
    }
    Message m;
    m.bits.assign(padded.begin() + static_cast<std::ptrdiff_t>(pad), padded.end());
    return m;
}

void write_vectors(std::ostream& out, const std::vector<TestVector>& vectors) {
    out << "# hex P L K alpha re_0 im_0 ... re_{P-1} im_{P-1}\n";
    char buf[64];
    for (const auto& v : vectors) {
        out << message_to_hex(v.message) << ' ' << v.length << ' ' << v.sparsity << ' ' << v.info_bits;
        std::snprintf(buf, sizeof buf, " %.17g", v.alpha);
        out << buf;
        for (const auto& c : v.codeword) {
            std::snprintf(buf, sizeof buf, " %.17g %.17g", c.real(), c.imag());
            out << buf;
        }
        out << '\n';
    }
}

std::vector<TestVector> read_vectors(std::istream& in) {
    std::vector<TestVector> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        TestVector v;
        std::string hex;
        if (!(ls >> hex >> v.length >> v.sparsity >> v.info_bits >> v.alpha)) {
            throw ParameterError("vector line " + std::to_string(lineno) + ": bad header fields");
        }
        v.message = message_from_hex(hex, v.info_bits);
        v.codeword.resize(static_cast<std::size_t>(v.length));
        for (auto& c : v.codeword) {
            double re, im;
            if (!(ls >> re >> im)) throw ParameterError("vector line " + std::to_string(lineno) + ": short codeword");
            c = {re, im};
        }
        std::string extra;
        if (ls >> extra) throw ParameterError("vector line " + std::to_string(lineno) + ": trailing data");
        out.push_back(std::move(v));
    }
    return out;
}

TestVector make_vector(int length, int sparsity, int info_bits, double alpha, const Message& message) {
    const DictionarySpec spec = DictionarySpec::build(length, sparsity, info_bits);
    TestVector v;
    v.message = message;
    v.length = length;
    v.sparsity = sparsity;
    v.info_bits = info_bits;
    v.alpha = alpha;
    v.codeword = alpha >= 1.0 ? encode(spec, message).symbols : encode_with_indication(spec, message, alpha).symbols;
    return v;
}

std::vector<TestVector> standard_vectors() {
    std::vector<TestVector> out;
    out.push_back(make_vector(7, 1, 2, 1.0, Message::from_string("10")));
    out.push_back(make_vector(11, 2, 6, 1.0, Message::from_string("000000")));
    out.push_back(make_vector(11, 2, 6, 1.0, Message::from_string("101110")));
    out.push_back(make_vector(11, 2, 6, 0.5, Message::from_string("000000")));
    out.push_back(make_vector(11, 2, 6, 0.5, Message::from_string("101110")));
    for (std::uint64_t i = 0; i < 4; ++i) {
        out.push_back(make_vector(31, 2, 16, 0.5, random_message(16, derive_seed(2024, {i}))));
    }
    return out;
}

}  // namespace zcssc
