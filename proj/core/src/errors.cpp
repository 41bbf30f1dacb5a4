#include "blocktrain/errors.hpp"

namespace blocktrain {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::GameFinished: return "GameFinished";
    case ErrorCode::NotYourTurn: return "NotYourTurn";
    case ErrorCode::IllegalAction: return "IllegalAction";
    case ErrorCode::OutOfOrderFill: return "OutOfOrderFill";
    case ErrorCode::InvalidValidation: return "InvalidValidation";
    case ErrorCode::WagonNotFull: return "WagonNotFull";
    case ErrorCode::ReplayDiverged: return "ReplayDiverged";
    case ErrorCode::UnknownPlayer: return "UnknownPlayer";
    case ErrorCode::MalformedBlock: return "MalformedBlock";
    case ErrorCode::WagonNotValidated: return "WagonNotValidated";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MalformedLedger: return "MalformedLedger";
    case ErrorCode::MalformedState: return "MalformedState";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::InvalidDeck: return "InvalidDeck";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidRate: return "InvalidRate";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::SessionFull: return "SessionFull";
    case ErrorCode::SessionAlreadyPlaying: return "SessionAlreadyPlaying";
    case ErrorCode::SessionNotPlaying: return "SessionNotPlaying";
    case ErrorCode::BadMessage: return "BadMessage";
  }
  return "Unknown";
}

}  // namespace blocktrain
