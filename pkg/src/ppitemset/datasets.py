"""Bundled demo data and the UCI mushroom column layout.

The UCI ``agaricus-lepiota.data`` file has no header row and uses one-letter
value codes; :func:`load_uci_mushroom` supplies both so that items come out
named like ``veil-type=partial``.
"""

from __future__ import annotations

from typing import Sequence, TextIO

from .catalog import ItemCatalog, TransactionDb, build_catalog, load_attribute_table

MUSHROOM_COLUMNS = (
    "class",
    "cap-shape",
    "cap-surface",
    "cap-color",
    "bruises",
    "odor",
    "gill-attachment",
    "gill-spacing",
    "gill-size",
    "gill-color",
    "stalk-shape",
    "stalk-root",
    "stalk-surface-above-ring",
    "stalk-surface-below-ring",
    "stalk-color-above-ring",
    "stalk-color-below-ring",
    "veil-type",
    "veil-color",
    "ring-number",
    "ring-type",
    "spore-print-color",
    "population",
    "habitat",
)


def _codes(spec: str) -> dict[str, str]:
    pairs = (part.split("=") for part in spec.split(","))
    return {code: name for name, code in pairs}


_SURFACE = _codes("fibrous=f,scaly=y,silky=k,smooth=s")
_STALK_COLOR = _codes("brown=n,buff=b,cinnamon=c,gray=g,orange=o,pink=p,red=e,white=w,yellow=y")

MUSHROOM_VALUE_NAMES: dict[str, dict[str, str]] = {
    "class": _codes("edible=e,poisonous=p"),
    "cap-shape": _codes("bell=b,conical=c,convex=x,flat=f,knobbed=k,sunken=s"),
    "cap-surface": _codes("fibrous=f,grooves=g,scaly=y,smooth=s"),
    "cap-color": _codes(
        "brown=n,buff=b,cinnamon=c,gray=g,green=r,pink=p,purple=u,red=e,white=w,yellow=y"
    ),
    "bruises": _codes("bruises=t,no=f"),
    "odor": _codes("almond=a,anise=l,creosote=c,fishy=y,foul=f,musty=m,none=n,pungent=p,spicy=s"),
    "gill-attachment": _codes("attached=a,descending=d,free=f,notched=n"),
    "gill-spacing": _codes("close=c,crowded=w,distant=d"),
    "gill-size": _codes("broad=b,narrow=n"),
    "gill-color": _codes(
        "black=k,brown=n,buff=b,chocolate=h,gray=g,green=r,orange=o,pink=p,"
        "purple=u,red=e,white=w,yellow=y"
    ),
    "stalk-shape": _codes("enlarging=e,tapering=t"),
    "stalk-root": _codes("bulbous=b,club=c,cup=u,equal=e,rhizomorphs=z,rooted=r,missing=?"),
    "stalk-surface-above-ring": _SURFACE,
    "stalk-surface-below-ring": _SURFACE,
    "stalk-color-above-ring": _STALK_COLOR,
    "stalk-color-below-ring": _STALK_COLOR,
    "veil-type": _codes("partial=p,universal=u"),
    "veil-color": _codes("brown=n,orange=o,white=w,yellow=y"),
    "ring-number": _codes("none=n,one=o,two=t"),
    "ring-type": _codes(
        "cobwebby=c,evanescent=e,flaring=f,large=l,none=n,pendant=p,sheathing=s,zone=z"
    ),
    "spore-print-color": _codes(
        "black=k,brown=n,buff=b,chocolate=h,green=r,orange=o,purple=u,white=w,yellow=y"
    ),
    "population": _codes("abundant=a,clustered=c,numerous=n,scattered=s,several=v,solitary=y"),
    "habitat": _codes("grasses=g,leaves=l,meadows=m,paths=p,urban=u,waste=w,woods=d"),
}

# attributes of the frequent itemsets reported for the mushroom experiment
MUSHROOM_REPORT_ATTRIBUTES = (
    "gill-attachment",
    "gill-spacing",
    "veil-type",
    "veil-color",
    "ring-number",
)


def load_uci_mushroom(
    stream: TextIO, attributes: Sequence[str] = MUSHROOM_REPORT_ATTRIBUTES
) -> tuple[ItemCatalog, TransactionDb]:
    return load_attribute_table(
        stream, attributes, header=MUSHROOM_COLUMNS, value_names=MUSHROOM_VALUE_NAMES
    )


SUPERMARKET_ITEMS = ("green apples", "red apples", "oranges", "bananas", "grapes")

SUPERMARKET_BASKETS = (
    (1, 5),
    (3,),
    (3, 5),
    (2, 4),
    (4,),
    (1, 2),
    (1, 3),
    (1, 3, 5),
)

# Fake rows of the worked mixed database as (gap, items); gap g means
# "after the g-th real transaction".
SUPERMARKET_PINNED_FAKES = (
    (2, (1, 4)),
    (2, (2,)),
    (2, (4, 5)),
    (4, (1,)),
    (4, (1, 3)),
    (4, (2, 5)),
    (6, (3,)),
    (6, (2, 4)),
    (8, (3, 5)),
    (8, (3,)),
    (8, (4, 5)),
    (8, (1, 4)),
)


def supermarket_db() -> TransactionDb:
    return TransactionDb(build_catalog(list(SUPERMARKET_ITEMS)), SUPERMARKET_BASKETS)
