#ifndef DEGONE_ERRORS_HPP
#define DEGONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace degone {

enum class ErrorCode {
    NotIrreducible,
    NotMonic,
    ZeroElement,
    PrecisionExhausted,
    IndexDivisor,
    NegativeExponentOutsideS,
    OnDivisor,
    NotAnSUnit,
    EqualPoints,
    OnSupport,
    NotOnCurve,
    BudgetExceeded,
    Torsion,
    Parse,
    InvalidArgument,
    VerificationFailed,
};

inline const char* error_name(ErrorCode c) noexcept {
    switch (c) {
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::NotMonic: return "NotMonic";
        case ErrorCode::ZeroElement: return "ZeroElement";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::IndexDivisor: return "IndexDivisor";
        case ErrorCode::NegativeExponentOutsideS: return "NegativeExponentOutsideS";
        case ErrorCode::OnDivisor: return "OnDivisor";
        case ErrorCode::NotAnSUnit: return "NotAnSUnit";
        case ErrorCode::EqualPoints: return "EqualPoints";
        case ErrorCode::OnSupport: return "OnSupport";
        case ErrorCode::NotOnCurve: return "NotOnCurve";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
        case ErrorCode::Torsion: return "Torsion";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

/// Parse failures remember the byte offset into the input text.
class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(ErrorCode::Parse, what + " at position " + std::to_string(pos)), pos_(pos) {}

    std::size_t position() const noexcept { return pos_; }

   private:
    std::size_t pos_;
};

}  // namespace degone

#endif
