"""Exceptions shared across the package."""


class ContractViolation(Exception):
    """An exactness or structure check that must hold by construction failed.

    Raised when verified input data (tables, embeddings, involutions) does
    not satisfy its defining relations.  CLI maps this to exit code 3.
    """


class FieldExtensionUnsupported(Exception):
    """A computation needs a real field extension the tower cannot express.

    The coefficient tower only adjoins square roots of positive rationals;
    anything past that (cube roots, nested radicals, transcendentals) lands
    here.  CLI maps this to exit code 4.
    """
