#pragma once

#include <stdexcept>
#include <string>

namespace mwk {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MWK_ERROR(Name)                                                        \
    struct Name : Error {                                                      \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

MWK_ERROR(ZeroElement);
MWK_ERROR(OrderingMismatch);
MWK_ERROR(FieldMismatch);
MWK_ERROR(NonHomogeneous);
MWK_ERROR(NonZeroDegree);
MWK_ERROR(UnsupportedField);
MWK_ERROR(UnsupportedEntries);
MWK_ERROR(UnsupportedDepth);
MWK_ERROR(UnsupportedPrime);
MWK_ERROR(FactorBoundExceeded);
MWK_ERROR(Overflow);
MWK_ERROR(UnknownLiteral);
MWK_ERROR(UnknownPoint);
MWK_ERROR(NotAThorntonPrime);
MWK_ERROR(PrimeFieldMismatch);
MWK_ERROR(InvalidClosure);
MWK_ERROR(NonRealField);
MWK_ERROR(InvalidTruncation);
MWK_ERROR(Internal);

#undef MWK_ERROR

// Parse failure with the byte offset of the offending character.
struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(const std::string& what, std::size_t off)
        : Error("SyntaxError at byte " + std::to_string(off) + ": " + what), offset(off) {}
};

} // namespace mwk
