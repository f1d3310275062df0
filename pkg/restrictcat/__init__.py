"""
Finite restriction category workbench.

This package builds and checks finite restriction categories and the
constructions around them:
- Restriction structures on finite categories, checked and enumerated
- Splitting of restriction idempotents (Kr)
- Partial map categories of M-categories and their total maps
- Presheaves, restriction presheaves and the restriction Yoneda embedding
- The equivalence between M-presheaves and restriction presheaves on Par
- Cocompleteness diagnostics over small diagram shapes

Every law check returns a CheckReport; failures carry witnesses.

Example:
    >>> from restrictcat import load_fixture, make_restriction_category, kr
    >>> bundle = load_fixture("max5b")
    >>> X = make_restriction_category(bundle.category, bundle.restriction)
    >>> len(kr(X).result.cat.objects)
    4
"""

from .__version__ import (
    __version__,
    __title__,
    __description__,
    __author__,
    __author_email__,
    __license__,
    __url__,
)
from .config import WorkbenchConfig, DEFAULT_CONFIG
from .exceptions import WorkbenchError, InputError, PreconditionError, InvariantViolation, ConfigurationError
from .report import CheckReport, Status, Violation
from .fincat import FinCat, Functor, NatTrans, check_category, colimit, pullback
from .restriction import RestrCat, check_restriction_structure, make_restriction_category
from .splitting import KrCat, kr, is_split
from .mcat import MSystem, ParCat, msystem, par, mtotal, phi, psi
from .presheaf import Presheaf, PresheafMap, yoneda, sigma_classifier
from .rpsh import RestrictionPresheaf, yoneda_r, check_restriction_presheaf
from .equiv import functor_F, functor_G, verify_equivalence, cockett_lack_check
from .cocheck import check_cocompleteness_conditions, check_m_extensive, lemma_suite
from .fixtures import load_fixture, fixtures_list
from .cli import main, run

__all__ = [
    'WorkbenchConfig',
    'DEFAULT_CONFIG',
    'WorkbenchError',
    'InputError',
    'PreconditionError',
    'InvariantViolation',
    'ConfigurationError',
    'CheckReport',
    'Status',
    'Violation',
    'FinCat',
    'Functor',
    'NatTrans',
    'check_category',
    'colimit',
    'pullback',
    'RestrCat',
    'check_restriction_structure',
    'make_restriction_category',
    'KrCat',
    'kr',
    'is_split',
    'MSystem',
    'ParCat',
    'msystem',
    'par',
    'mtotal',
    'phi',
    'psi',
    'Presheaf',
    'PresheafMap',
    'yoneda',
    'sigma_classifier',
    'RestrictionPresheaf',
    'yoneda_r',
    'check_restriction_presheaf',
    'functor_F',
    'functor_G',
    'verify_equivalence',
    'cockett_lack_check',
    'check_cocompleteness_conditions',
    'check_m_extensive',
    'lemma_suite',
    'load_fixture',
    'fixtures_list',
    'main',
    'run',
]
