#pragma once

#include "pml/statutes.hpp"

// Canonical land-purchase specification and a matching sale record, shared by
// the test suites. All texts are render fixed points.

namespace fixtures {

inline const char* kPurchaseText = pml::purchase_spec_text();

inline const char* kVillaSaleText = pml::villa_sale_facts_text();

// Generic transfer space and a movable-sale theory; blending either with the
// purchase theory goes through the morphism files next to them in data/.

inline const char* kTransferText = R"(spec transfer
  sort Agent
  sort Thing
  sort Time ordered
  rel Trans : Agent * Thing * Agent * Time
  axiom REFLEXIVE_TIME: forall t: Time . t <= t
end
)";

inline const char* kMovableSaleText = R"(spec movable_sale
  sort P_nl
  sort Goods
  sort T ordered
  rel Sell : P_nl * Goods * P_nl * T
  rel Handover : P_nl * Goods * P_nl * T
  axiom CONSENSUAL: forall a, b: P_nl . forall g: Goods . forall t: T . Sell(a, g, b, t) -> (exists u: T . u <= t /\ Handover(a, g, b, u))
end
)";

inline const char* kTransferToPurchaseMap = R"(# transfer -> purchase
sort Agent -> P_nl
sort Thing -> Pr
sort Time -> T
rel Trans -> Pur
)";

inline const char* kTransferToMovableSaleMap = R"(# transfer -> movable_sale
sort Agent -> P_nl
sort Thing -> Goods
sort Time -> T
rel Trans -> Sell
)";

} // namespace fixtures
