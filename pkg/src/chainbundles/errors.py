"""Exception hierarchy shared by the library and the command line front end."""

from __future__ import annotations


class ChainBundleError(Exception):
    """Base class for every error raised by this package."""


class InstanceMismatch(ChainBundleError):
    """Objects or morphisms from two different category instances were mixed."""


class NonComposable(ChainBundleError):
    """The codomain of the first arrow is not the domain of the second."""


class UniverseTooLarge(ChainBundleError):
    """An exhaustive search would examine more candidates than the configured cap."""


class ExplosionGuard(UniverseTooLarge):
    """An enumeration (hom-set, path set, chain selection) exceeds its cap."""


class NoImage(ChainBundleError):
    """The instance cannot represent the image object of a morphism."""


class Unsupported(ChainBundleError):
    """The instance does not provide the requested construction."""


class KernelsUnsupported(Unsupported):
    pass


class CokernelsUnsupported(Unsupported):
    pass


class ProductsUnsupported(Unsupported):
    pass


class SourceMismatch(ChainBundleError):
    """Two bundle morphisms that should share a source do not."""


class FunctorDomainMismatch(ChainBundleError):
    """A functor was applied to data from a category it is not defined on."""


class ImageNotBasisAligned(NoImage):
    """A chain map component has an image not spanned by basis elements."""


class DocumentError(ChainBundleError):
    """A scenario document is malformed or references an unknown name."""
