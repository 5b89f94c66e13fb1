#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace verigen {

/// Base for every error raised by the pipeline. The kind string is stable and
/// appears in logs and CLI output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define VERIGEN_DEFINE_ERROR(Name, Base)                          \
  class Name : public Base {                                      \
   public:                                                        \
    explicit Name(const std::string& what) : Base(#Name, what) {} \
                                                                  \
   protected:                                                     \
    Name(std::string kind, const std::string& what)               \
        : Base(std::move(kind), what) {}                          \
  };

/// Missing external tool or unusable host setup. Maps to CLI exit code 2.
VERIGEN_DEFINE_ERROR(EnvironmentError, Error)
VERIGEN_DEFINE_ERROR(CompilerMissing, EnvironmentError)
VERIGEN_DEFINE_ERROR(VerifierMissing, EnvironmentError)

VERIGEN_DEFINE_ERROR(MissingFile, Error)
VERIGEN_DEFINE_ERROR(MalformedTest, Error)
VERIGEN_DEFINE_ERROR(InvalidBundle, Error)
VERIGEN_DEFINE_ERROR(UnsupportedType, Error)
VERIGEN_DEFINE_ERROR(HarnessBuildError, Error)
VERIGEN_DEFINE_ERROR(UnsupportedConstruct, Error)
VERIGEN_DEFINE_ERROR(InvalidState, Error)
VERIGEN_DEFINE_ERROR(EmptyPool, Error)
VERIGEN_DEFINE_ERROR(EmptyResponse, Error)
VERIGEN_DEFINE_ERROR(IoError, Error)

/// Provider failures. Only ProviderUnreachable and RateLimited are retried.
VERIGEN_DEFINE_ERROR(ProviderError, Error)
VERIGEN_DEFINE_ERROR(ProviderUnreachable, ProviderError)
VERIGEN_DEFINE_ERROR(RateLimited, ProviderError)
VERIGEN_DEFINE_ERROR(AuthFailure, ProviderError)
VERIGEN_DEFINE_ERROR(ScriptExhausted, ProviderError)

#undef VERIGEN_DEFINE_ERROR

/// Signature text could not be parsed; carries the byte offset of the problem.
class SignatureParseError : public Error {
 public:
  SignatureParseError(std::size_t position, const std::string& reason)
      : Error("SignatureParseError",
              "signature parse error at offset " + std::to_string(position) +
                  ": " + reason),
        position_(position),
        reason_(reason) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

}  // namespace verigen
