#ifndef BIHALL_COMMON_HPP
#define BIHALL_COMMON_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bihall {

enum class Err {
    BoundExceeded,
    NonCommutingDiagram,
    TypeMismatch,
    NonMonotone,
    ShapeMismatch,
    BoundaryMismatch,
    NonFunctorialInput,
    IncoherentOplaxData,
    NotPseudoPullback,
    NotInert,
    InvalidInput,
    TooLarge,
    BudgetExceeded,
    BadParams,
    LevelMissing,
    ParseError,
};

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg)
{
    throw Error(code, msg);
}

inline void require(bool cond, Err code, const std::string& msg)
{
    if (!cond)
        fail(code, msg);
}

/* Exact rational arithmetic on int64; all cardinalities in this project are tiny. */
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { reduce(); }

    void reduce()
    {
        if (den == 0)
            fail(Err::InvalidInput, "rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0)
            den = 1;
    }

    friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(Rat a, Rat b)
    {
        require(b.num != 0, Err::InvalidInput, "division by zero rational");
        return Rat(a.num * b.den, a.den * b.num);
    }
    Rat& operator+=(Rat b) { return *this = *this + b; }
    Rat& operator*=(Rat b) { return *this = *this * b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }

    std::string str() const
    {
        if (den == 1)
            return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

struct Report {
    bool pass = true;
    std::vector<std::string> failures;
    void fail(const std::string& msg)
    {
        pass = false;
        failures.push_back(msg);
    }
    void merge(const Report& other)
    {
        pass = pass && other.pass;
        for (const auto& s : other.failures)
            failures.push_back(s);
    }
};

/* Deterministic splitmix64-based RNG for the property tests. */
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next()
    {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return n <= 1 ? 0 : int(next() % uint64_t(n)); }
};

}  // namespace bihall

#endif
