#pragma once

#include <stdexcept>
#include <string>

namespace lerch {

enum class ErrorKind { domain, pole, accuracy, contract, cap, conditioning, unsupported };

inline const char* to_string(ErrorKind k) noexcept
{
    switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::contract: return "contract";
    case ErrorKind::cap: return "cap";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::unsupported: return "unsupported";
    }
    return "unknown";
}

// Base of every error raised by the library. The kind is what callers
// (the CLI in particular) switch on to pick an exit status.
class error : public std::runtime_error
{
public:
    error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class domain_error : public error
{
public:
    explicit domain_error(const std::string& what) : error(ErrorKind::domain, what) {}
};

// Raised at a pole of gamma/digamma/zeta; carries the offending integer.
class pole_error : public error
{
public:
    pole_error(const std::string& what, long long at)
        : error(ErrorKind::pole, what + " (pole at " + std::to_string(at) + ")"), at_(at) {}

    long long at() const noexcept { return at_; }

private:
    long long at_;
};

// An iteration did not reach its tolerance; achieved() is the last increment seen.
class accuracy_error : public error
{
public:
    accuracy_error(const std::string& what, double achieved)
        : error(ErrorKind::accuracy, what + " (achieved " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

class contract_error : public error
{
public:
    explicit contract_error(const std::string& what) : error(ErrorKind::contract, what) {}
};

class cap_error : public error
{
public:
    explicit cap_error(const std::string& what) : error(ErrorKind::cap, what) {}
};

class conditioning_error : public error
{
public:
    explicit conditioning_error(const std::string& what) : error(ErrorKind::conditioning, what) {}
};

class unsupported_error : public error
{
public:
    explicit unsupported_error(const std::string& what) : error(ErrorKind::unsupported, what) {}
};

} // namespace lerch
