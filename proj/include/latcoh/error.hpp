#pragma once

#include <stdexcept>
#include <string>

namespace latcoh {

enum class errc {
    invalid_input,      // bad arguments, malformed files, violated preconditions
    torsion_error,      // operation would require a torsion quotient
    resource_limit,     // configured bound exceeded (subgroup bound, nnz budget, ...)
    construction_error, // internal verification of a built object failed
    lemma_violation,    // a verification that must hold by theory came out false
    not_found,          // requested element/object does not exist
    overflow            // exact arithmetic left the representable range
};

class error : public std::runtime_error {
  public:
    error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    errc kind() const { return kind_; }

    static const char* kind_name(errc k) {
        switch (k) {
            case errc::invalid_input: return "invalid-input";
            case errc::torsion_error: return "torsion-error";
            case errc::resource_limit: return "resource-limit";
            case errc::construction_error: return "construction-error";
            case errc::lemma_violation: return "lemma-violation";
            case errc::not_found: return "not-found";
            case errc::overflow: return "overflow";
        }
        return "error";
    }

  private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

} // namespace latcoh
