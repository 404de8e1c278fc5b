#pragma once

#include <stdexcept>
#include <string>

namespace pmesym {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* exact arithmetic */
struct OverflowError : Error {
    explicit OverflowError(const std::string& msg) : Error("overflow: " + msg) {}
};
struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& msg) : Error("arity mismatch: " + msg) {}
};

/* argument / config validation */
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error("invalid argument: " + msg) {}
};

/* group / factorization */
struct NumericDrift : Error {
    explicit NumericDrift(const std::string& msg) : Error("numeric drift: " + msg) {}
};
struct OutsideCell : Error {
    explicit OutsideCell(const std::string& msg) : Error("outside big cell: " + msg) {}
};
struct SingularPoint : Error {
    explicit SingularPoint(const std::string& msg) : Error("singular point: " + msg) {}
};

/* representation / PDE domains */
struct DomainViolation : Error {
    explicit DomainViolation(const std::string& msg) : Error("domain violation: " + msg) {}
};
struct OutsideDomain : Error {
    explicit OutsideDomain(const std::string& msg) : Error("outside domain: " + msg) {}
};
struct RejectedElement : Error {
    explicit RejectedElement(const std::string& msg) : Error("rejected element: " + msg) {}
};

} // namespace pmesym
