#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blocktrain {

// Stable error codes. The string forms are part of the wire protocol.
enum class ErrorCode {
  ConfigInvalid,
  GameFinished,
  NotYourTurn,
  IllegalAction,
  OutOfOrderFill,
  InvalidValidation,
  WagonNotFull,
  ReplayDiverged,
  UnknownPlayer,
  MalformedBlock,
  WagonNotValidated,
  IndexOutOfRange,
  MalformedLedger,
  MalformedState,
  NonTermination,
  InvalidCount,
  InvalidDeck,
  TooLarge,
  InvalidRate,
  UnknownSession,
  SessionFull,
  SessionAlreadyPlaying,
  SessionNotPlaying,
  BadMessage,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blocktrain
