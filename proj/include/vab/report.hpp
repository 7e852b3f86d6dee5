#pragma once

#include <string>
#include <vector>

namespace vab {

/// One failed identity: which law, on which basis tuple, with both sides
/// rendered as exact vectors (diffable across runs).
struct Violation {
    std::string family;
    std::vector<int> where;
    std::string lhs;
    std::string rhs;

    std::string str() const;
};

struct CheckReport {
    std::string subject;
    long checked = 0;
    std::vector<Violation> violations;
    std::vector<std::string> notes;

    bool pass() const { return violations.empty(); }
    void fail(std::string family, std::vector<int> where, std::string lhs, std::string rhs);
    void merge(const CheckReport& other);
    std::string summary() const;
};

} // namespace vab
