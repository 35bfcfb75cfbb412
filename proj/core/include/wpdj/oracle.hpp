#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wpdj {

enum class FunctionCharacter { Constant, Balanced };

const char* to_string(FunctionCharacter c);

/// A binary function over an even number (2m) of register indices,
/// stored as its value table f(0), f(1), ..., f(2m-1).
class BooleanFunction {
public:
    explicit BooleanFunction(std::vector<std::uint8_t> values);

    /// Parse from a bit string such as "00001111".
    static BooleanFunction from_bits(const std::string& bits);

    std::string bits() const;
    std::size_t size() const { return values_.size(); }
    std::uint8_t value(std::size_t k) const;
    const std::vector<std::uint8_t>& values() const { return values_; }
    std::size_t popcount() const;

    bool operator==(const BooleanFunction&) const = default;

private:
    std::vector<std::uint8_t> values_;
};

/// Constant when all values agree, Balanced when exactly half are 1;
/// anything else violates the promise and throws PromiseViolationError.
FunctionCharacter character(const BooleanFunction& f);

BooleanFunction complement(const BooleanFunction& f);

/// 2 + C(2m, m): the number of constant/balanced functions on 2m inputs.
std::uint64_t constant_balanced_count(int input_count);

/// Visit the two constant functions first, then every balanced function in
/// lexicographic order of its bit string. input_count must be even and in
/// [2, 28]. Streaming; nothing is materialized.
void for_each_constant_balanced(int input_count,
                                const std::function<void(const BooleanFunction&)>& visit);

/// Materialized form of for_each_constant_balanced. Fine for small registers;
/// prefer the visitor above near the upper end of the input range.
std::vector<BooleanFunction> enumerate_all(int input_count);

/// Spectral phases in degrees, one per register index, each wrapped to [0, 360).
struct PhaseSet {
    std::vector<double> phases_deg;

    std::size_t size() const { return phases_deg.size(); }
};

PhaseSet zero_phases(std::size_t count);

/// phi_k = base_k + 180 deg * f(k), wrapped to [0, 360): the function's
/// values become pi phase flips on top of the base set.
PhaseSet encode_phases(const BooleanFunction& f, const PhaseSet& base);

} // namespace wpdj
