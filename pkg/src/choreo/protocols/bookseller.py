"""The bookseller protocol and its higher-order and location-polymorphic variants.

The buyer sends a title, the seller replies with a price, the buyer decides,
and on a yes the seller ships a delivery date back. Prices, dates and the
budget are fixtures chosen so that both outcomes are reachable.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field
from typing import Callable, Mapping

from ..choreography import Choreo, comm, cond, locally
from ..errors import ConfigurationError
from ..freer import do
from ..located import Located, Location

BUYER = "buyer"
BUYER2 = "buyer2"
SELLER = "seller"

TAPL = "Types and Programming Languages"
HOTT = "Homotopy Type Theory"
BUDGET = 100


@dataclass(frozen=True)
class Catalog:
    """The seller's price list and shipping dates."""

    prices: Mapping[str, int] = field(default_factory=lambda: {TAPL: 80, HOTT: 120})
    delivery: Mapping[str, datetime.date] = field(
        default_factory=lambda: {TAPL: datetime.date(2025, 12, 1), HOTT: datetime.date(2026, 1, 15)}
    )

    def price_of(self, title: str) -> int:
        return self.prices[title]

    def delivery_date(self, title: str) -> datetime.date:
        return self.delivery[title]


DEFAULT_CATALOG = Catalog()

Decision = Callable[[Located], Choreo]


def decide_alone(price: Located, budget: int = BUDGET, buyer: Location = BUYER) -> Choreo:
    """Buy iff the price fits the budget."""
    return locally(buyer, lambda un, ctx: un(price) <= budget)


@do
def decide_with_friend(price: Located, budget: int = BUDGET):
    """A second buyer chips in half the price."""
    price2 = yield comm(BUYER, price, BUYER2)
    contrib = yield locally(BUYER2, lambda un, ctx: un(price2) // 2)
    contrib_b = yield comm(BUYER2, contrib, BUYER)
    return (yield locally(BUYER, lambda un, ctx: un(price) <= un(contrib_b) + budget))


@do
def _bookseller(buyer: Location, decide: Decision, title: str, catalog: Catalog):
    title_b = yield locally(buyer, lambda un, ctx: title)
    title_s = yield comm(buyer, title_b, SELLER)
    price = yield locally(SELLER, lambda un, ctx: catalog.price_of(un(title_s)))
    price_b = yield comm(SELLER, price, buyer)
    decision = yield decide(price_b)

    @do
    def buy():
        date = yield locally(SELLER, lambda un, ctx: catalog.delivery_date(un(title_s)))
        return (yield comm(SELLER, date, buyer))

    def branch(decided: bool) -> Choreo:
        if decided:
            return buy()
        return locally(buyer, lambda un, ctx: None)

    return (yield cond(buyer, decision, branch))


def bookseller(decide: Decision = decide_alone, title: str = TAPL, catalog: Catalog = DEFAULT_CATALOG) -> Choreo:
    """The delivery date at the buyer if they bought the book, else ``None``.

    ``decide`` maps the buyer-located price to a buyer-located yes/no, and may
    itself communicate (see ``decide_with_friend``).
    """
    return _bookseller(BUYER, decide, title, catalog)


def bookseller_polymorphic(
    buyer: Location,
    title: str = TAPL,
    catalog: Catalog = DEFAULT_CATALOG,
    budget: int = BUDGET,
) -> Choreo:
    """The single-buyer bookseller with any location playing the buyer."""
    if buyer == SELLER:
        raise ConfigurationError("the buyer must be a different location from the seller")
    return _bookseller(buyer, lambda price: decide_alone(price, budget, buyer), title, catalog)
