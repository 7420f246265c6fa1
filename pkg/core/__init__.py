from .classno import CensusReport, ClassNumberBundle, census
from .cyclo import AdmissiblePair, NTuple, admissible_pairs, dagger
from .oracle import DoubleCosetTable, IdealClassSet, RightIdealClassEnumerator, double_coset_table
from .quatalg import Lattice4, OrderInfo, QuaternionAlgebra, eichler_order, make_algebra, maximal_order

__all__ = [
    'CensusReport',
    'ClassNumberBundle',
    'census',
    'AdmissiblePair',
    'NTuple',
    'admissible_pairs',
    'dagger',
    'DoubleCosetTable',
    'IdealClassSet',
    'RightIdealClassEnumerator',
    'double_coset_table',
    'Lattice4',
    'OrderInfo',
    'QuaternionAlgebra',
    'eichler_order',
    'make_algebra',
    'maximal_order',
]
