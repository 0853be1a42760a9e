"""Privacy-preserving frequent itemset mining.

Real transactions are hidden among generated fakes, every item id is
shifted by a secret key, and frequent itemsets mined from the distorted
database are mapped back to true supports and original items.
"""

__version__ = "0.1.0"

from .catalog import (
    ItemCatalog,
    ParseError,
    TransactionDb,
    average_real_length,
    build_catalog,
    load_attribute_table,
    load_basket_file,
    make_transaction,
)
from .kernels import BACKEND
from .miner import (
    AssociationRule,
    FrequentItemset,
    VerticalIndex,
    association_rules,
    frequent_itemsets,
    support,
    support_count,
)
from .randomizer import (
    LengthModel,
    MixMask,
    RandomizationParams,
    gen_fake_transaction,
    mix_fake,
    randomize_pipeline,
    shift_db,
    shift_item,
)
from .reconstructor import (
    ReconstructedSupport,
    ReconstructionParams,
    deshift_item,
    fake_support_expectation,
    invert_threshold,
    reconstruct_support,
    recover_frequent_itemsets,
)

__all__ = [
    "AssociationRule",
    "BACKEND",
    "FrequentItemset",
    "ItemCatalog",
    "LengthModel",
    "MixMask",
    "ParseError",
    "RandomizationParams",
    "ReconstructedSupport",
    "ReconstructionParams",
    "TransactionDb",
    "VerticalIndex",
    "association_rules",
    "average_real_length",
    "build_catalog",
    "deshift_item",
    "fake_support_expectation",
    "frequent_itemsets",
    "gen_fake_transaction",
    "invert_threshold",
    "load_attribute_table",
    "load_basket_file",
    "make_transaction",
    "mix_fake",
    "randomize_pipeline",
    "reconstruct_support",
    "recover_frequent_itemsets",
    "shift_db",
    "shift_item",
    "support",
    "support_count",
]
