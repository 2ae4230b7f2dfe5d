#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bouquet {

enum class Errc {
  kOverflow,
  kNotInTract,
  kOutOfH,
  kNoConvergence,
  kModelMismatch,
  kInfeasibleModel,
  kParse,
  kEqualInputs,
  kInvalidArgument,
  kBadSpec,
  kNotInJulia,
  kLeftH,
  kEmpty,
  kEmptyInput,
  kNoEndpointFound,
  kBadPhi,
  kAddressMismatch,
  kNotOnHair,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bouquet
