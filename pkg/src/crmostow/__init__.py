"""crmostow: exact structure theory and symmetric-space numerics
for compact homogeneous CR manifolds presented by matrix Lie algebras."""

__version__ = "0.1.0"
