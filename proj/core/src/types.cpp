#include "blocktrain/types.hpp"

namespace blocktrain {

char kind_code(SupplyKind kind) {
  switch (kind) {
    case SupplyKind::Water: return 'W';
    case SupplyKind::Food: return 'F';
    case SupplyKind::Medicine: return 'M';
  }
  return '?';
}

std::optional<SupplyKind> kind_from_code(char code) {
  switch (code) {
    case 'W': return SupplyKind::Water;
    case 'F': return SupplyKind::Food;
    case 'M': return SupplyKind::Medicine;
    default: return std::nullopt;
  }
}

std::string sequence_to_string(const Sequence& seq) {
  std::string out;
  out.reserve(seq.size() * 2);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i != 0) out.push_back(',');
    out.push_back(kind_code(seq[i]));
  }
  return out;
}

std::string_view to_string(WagonStatus status) {
  switch (status) {
    case WagonStatus::Filling: return "Filling";
    case WagonStatus::Validating: return "Validating";
    case WagonStatus::Validated: return "Validated";
  }
  return "?";
}

Sequence WagonBoard::filled_kinds() const {
  Sequence out;
  out.reserve(filled.size());
  for (const auto& card : filled) out.push_back(card.kind);
  return out;
}

}  // namespace blocktrain
