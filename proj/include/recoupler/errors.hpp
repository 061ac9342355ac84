#pragma once

#include <stdexcept>
#include <string>

namespace recoupler {

// Base class for all recoupler errors so callers can catch the whole family.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotPrimeError : public Error {
public:
    explicit NotPrimeError(long q) : Error("not a prime: " + std::to_string(q)) {}
};

class WrongResidueClassError : public Error {
public:
    WrongResidueClassError(long q, int wanted)
        : Error("prime " + std::to_string(q) + " is not " + std::to_string(wanted) + " mod 4") {}
};

class NonSquareError : public Error {
public:
    NonSquareError() : Error("matrix is not square") {}
};

class NonSignEntriesError : public Error {
public:
    NonSignEntriesError() : Error("matrix entries must be +1 or -1") {}
};

class IndexOutOfRangeError : public Error {
public:
    explicit IndexOutOfRangeError(const std::string& what) : Error("index out of range: " + what) {}
};

class RegistryExhaustedError : public Error {
public:
    explicit RegistryExhaustedError(long n)
        : Error("order registry exhausted searching n_bar(" + std::to_string(n) +
                "); raise the registry bound") {}
};

class BadPairError : public Error {
public:
    explicit BadPairError(const std::string& what) : Error("bad spin pair: " + what) {}
};

class BadKError : public Error {
public:
    explicit BadKError(const std::string& what) : Error("bad neighbor range k: " + what) {}
};

class NonPositiveDurationError : public Error {
public:
    explicit NonPositiveDurationError(double t)
        : Error("interval duration must be positive, got " + std::to_string(t)) {}
};

class ZeroCouplingError : public Error {
public:
    ZeroCouplingError() : Error("coupling constant is zero") {}
};

class UncoupledPairError : public Error {
public:
    UncoupledPairError(int i, int j)
        : Error("spins " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                " are not coupled in this system") {}
};

class TooManySpinsError : public Error {
public:
    TooManySpinsError(int n, int cap)
        : Error("brute-force oracle capped at " + std::to_string(cap) + " spins, got " +
                std::to_string(n)) {}
};

class TargetShapeMismatchError : public Error {
public:
    explicit TargetShapeMismatchError(const std::string& what) : Error("target shape mismatch: " + what) {}
};

class BadProgressionError : public Error {
public:
    BadProgressionError(long a, long q)
        : Error("arithmetic progression requires gcd(a,q)=1, got a=" + std::to_string(a) +
                " q=" + std::to_string(q)) {}
};

class DomainTooSmallError : public Error {
public:
    explicit DomainTooSmallError(double x)
        : Error("x = " + std::to_string(x) + " below the domain of the bound") {}
};

// Malformed input documents; carries the offending line when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : Error(what), line_(0) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace recoupler
