#include "wpdj/oracle.hpp"

#include <utility>

#include "wpdj/errors.hpp"
#include "wpdj/units.hpp"

namespace wpdj {

const char* to_string(FunctionCharacter c) {
    return c == FunctionCharacter::Constant ? "constant" : "balanced";
}

BooleanFunction::BooleanFunction(std::vector<std::uint8_t> values) : values_(std::move(values)) {
    if (values_.size() < 2 || values_.size() % 2 != 0) {
        throw DomainError("boolean function: value count must be even and >= 2");
    }
    for (std::uint8_t v : values_) {
        if (v > 1) throw DomainError("boolean function: values must be 0 or 1");
    }
}

BooleanFunction BooleanFunction::from_bits(const std::string& bits) {
    std::vector<std::uint8_t> values;
    values.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw DomainError("boolean function: non-binary character in \"" + bits + "\"");
        }
        values.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BooleanFunction(std::move(values));
}

std::string BooleanFunction::bits() const {
    std::string s(values_.size(), '0');
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i]) s[i] = '1';
    }
    return s;
}

std::uint8_t BooleanFunction::value(std::size_t k) const {
    if (k >= values_.size()) throw DomainError("boolean function: index out of range");
    return values_[k];
}

std::size_t BooleanFunction::popcount() const {
    std::size_t n = 0;
    for (std::uint8_t v : values_) n += v;
    return n;
}

FunctionCharacter character(const BooleanFunction& f) {
    const std::size_t ones = f.popcount();
    if (ones == 0 || ones == f.size()) return FunctionCharacter::Constant;
    if (ones * 2 == f.size()) return FunctionCharacter::Balanced;
    throw PromiseViolationError("function " + f.bits() + " is neither constant nor balanced");
}

BooleanFunction complement(const BooleanFunction& f) {
    std::vector<std::uint8_t> values(f.values());
    for (auto& v : values) v = static_cast<std::uint8_t>(1 - v);
    return BooleanFunction(std::move(values));
}

namespace {

void check_input_count(int input_count) {
    if (input_count < 2 || input_count > 28 || input_count % 2 != 0) {
        throw DomainError("enumeration: input count must be even and within [2, 28], got " +
                          std::to_string(input_count));
    }
}

BooleanFunction function_from_mask(std::uint32_t mask, int input_count) {
    std::vector<std::uint8_t> values(static_cast<std::size_t>(input_count), 0);
    for (int k = 0; k < input_count; ++k) {
        // values[0] is the most significant bit of the mask, so ascending
        // masks are lexicographically ascending bit strings.
        values[static_cast<std::size_t>(k)] =
            static_cast<std::uint8_t>((mask >> (input_count - 1 - k)) & 1u);
    }
    return BooleanFunction(std::move(values));
}

} // namespace

std::uint64_t constant_balanced_count(int input_count) {
    check_input_count(input_count);
    const int m = input_count / 2;
    // C(2m, m) multiplicatively; exact in 64 bits for 2m <= 28
    std::uint64_t binom = 1;
    for (int i = 1; i <= m; ++i) {
        binom = binom * static_cast<std::uint64_t>(input_count - m + i) /
                static_cast<std::uint64_t>(i);
    }
    return 2 + binom;
}

void for_each_constant_balanced(int input_count,
                                const std::function<void(const BooleanFunction&)>& visit) {
    check_input_count(input_count);
    const int n = input_count;
    visit(BooleanFunction(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0)));
    visit(BooleanFunction(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1)));

    // Gosper's hack walks same-popcount masks in ascending numeric order.
    const std::uint32_t limit = std::uint32_t{1} << n;
    std::uint32_t mask = (std::uint32_t{1} << (n / 2)) - 1;
    while (mask < limit) {
        visit(function_from_mask(mask, n));
        const std::uint32_t c = mask & (~mask + 1);
        const std::uint32_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

std::vector<BooleanFunction> enumerate_all(int input_count) {
    std::vector<BooleanFunction> all;
    all.reserve(constant_balanced_count(input_count));
    for_each_constant_balanced(input_count,
                               [&all](const BooleanFunction& f) { all.push_back(f); });
    return all;
}

PhaseSet zero_phases(std::size_t count) {
    return PhaseSet{std::vector<double>(count, 0.0)};
}

PhaseSet encode_phases(const BooleanFunction& f, const PhaseSet& base) {
    if (f.size() != base.size()) {
        throw DomainError("encode_phases: function has " + std::to_string(f.size()) +
                          " values but base set has " + std::to_string(base.size()));
    }
    PhaseSet out;
    out.phases_deg.reserve(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        out.phases_deg.push_back(wrap_deg(base.phases_deg[k] + 180.0 * f.value(k)));
    }
    return out;
}

} // namespace wpdj
