"""Relation-extensions ``C x Ext^2(DC, C)`` of bound quiver algebras over Q and F_p."""

from .algebra import Algebra, build_algebra, ideal_top_counts, multiply, opposite, truncated_ideal
from .bimodule import Bimodule, bimodule_top, ext2_bimodule
from .errors import (ActionMismatch, CompositionMismatch, CyclicQuiver, DuplicateName,
                     GlobalDimensionTooHigh, InfiniteDimensional, InputError, InternalError,
                     NonAdmissibleIdeal, NotAModuleMap, ParseError, PreconditionError, RelextError,
                     RepresentativeChoiceFailed, UnknownArrow, UnknownVertex, ZeroModule, ZeroRelation)
from .extension import (ExtendedQuiver, ExtensionAlgebra, extension_projectives, has_two_cycle,
                        new_arrows_close_cycle, present_extension, quiver_from_extension,
                        quiver_isomorphism, relext_quiver, trivial_extension)
from .field import Field, ModP
from .modules import (ModuleMap, Representation, dual, dual_regular, format_loewy, injective,
                      loewy_series, projective, simple)
from .parser import format_presentation, parse_file
from .quiver import Arrow, Path, PathVector, Presentation, Quiver
from .resolution import (AboveBound, Resolution, ext_dim, global_dimension, injective_dimension,
                         lift_endomorphism, minimal_resolution, projective_cover, projective_dimension)

__version__ = "0.1.0"
