"""The 14-dimension semantic basis shared by every other module.

Column order is fixed once, here, and used everywhere: in-memory
activation vectors, rank pivots, and the TSV schema all index dimensions
by ``CANONICAL_ORDER``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Dimension:
    symbol: str
    concept: str
    description: str


DIMENSIONS: tuple[Dimension, ...] = (
    Dimension("A", "AccountState", "account identity, status, currency and type"),
    Dimension("T", "TransactionLog", "append-only ordered ledger of booked events"),
    Dimension("P", "PaymentInstruction", "instruction or intent to move value"),
    Dimension("C", "ConsentRecord", "granted scopes, permissions and duration"),
    Dimension("B", "BeneficiaryRecord", "trusted third-party payee metadata"),
    Dimension("D", "DirectDebitMandate", "creditor-initiated pull instruction lifecycle"),
    Dimension("S", "StandingOrder", "recurring push instruction"),
    Dimension("Y", "PartyIdentity", "customer demographics and legal-person identity"),
    Dimension("R", "ProductDefinition", "bank offers, rates, fees and features"),
    Dimension("F", "FundsAvailability", "point-in-time sufficiency predicate"),
    Dimension("I", "ServiceDiscovery", "endpoint availability and capability metadata"),
    Dimension("V", "SecuritiesPosition", "holdings with quantity, cost basis and valuation"),
    Dimension("L", "CreditFacility", "facility limits, covenants, drawn and undrawn amounts"),
    Dimension("M", "MarketPrice", "external market price observable"),
)

CANONICAL_ORDER: tuple[str, ...] = tuple(d.symbol for d in DIMENSIONS)
SYMBOL_SET: frozenset[str] = frozenset(CANONICAL_ORDER)
N_DIMENSIONS: int = len(DIMENSIONS)

# symbol -> bit position of the packed activation word
BIT_INDEX: dict[str, int] = {sym: i for i, sym in enumerate(CANONICAL_ORDER)}

BY_SYMBOL: dict[str, Dimension] = {d.symbol: d for d in DIMENSIONS}


def column_mask(symbols) -> int:
    """Packed word with a 1 bit for each symbol in ``symbols``."""
    mask = 0
    for sym in symbols:
        mask |= 1 << BIT_INDEX[sym]
    return mask


def mask_symbols(mask: int) -> tuple[str, ...]:
    """Symbols of the set bits of ``mask``, in canonical order."""
    return tuple(sym for sym in CANONICAL_ORDER if mask & (1 << BIT_INDEX[sym]))
