from enum import Enum


class Choices(str, Enum):
    """String enum carrying a value and a human label."""

    def __new__(cls, value, label):
        member = str.__new__(cls, value)
        member._value_ = value
        member.label = label
        return member

    def __str__(self):
        return self.value

    @classmethod
    def values(cls):
        return [member.value for member in cls]


class FamilyKind(Choices):
    FLAT_TUBE = "flat-tube", "Flat tube"
    LOG_TUBE = "log-tube", "Log tube"
    SPHERE = "sphere", "Sphere"
    ELLIPSOID = "ellipsoid", "Ellipsoid"
    CARTAN_MU = "cartan-mu", "Cartan mu"


class UmbilicFlag(Choices):
    NONUMBILIC = "nonumbilic", "Non-umbilical"
    CANDIDATE = "candidate", "Umbilical candidate"
    INDETERMINATE = "indeterminate", "Indeterminate"
    POISONED = "poisoned", "Poisoned"


class OutputFormat(Choices):
    CSV = "csv", "CSV"
    JSON = "json", "JSON"


class VerifySuite(Choices):
    ALL = "all", "All claims"
    FLAT_TUBE = "flat-tube", "Flat-tube non-umbilicity"
    SCALING = "scaling", "Epsilon^14 scaling"
    REDUCTION = "reduction", "Reduction identity"
    LOG_TUBE = "log-tube", "Log-tube non-umbilicity"
    SPHERE = "sphere", "Sphere control"
    ELLIPSOID = "ellipsoid", "Ellipsoid umbilic existence"
    INVARIANTS = "invariants", "Tangency and reality"
    MONGE_AMPERE = "monge-ampere", "Monge-Ampere check"
    CONSISTENCY = "consistency", "Numerical self-consistency"
    SYMMETRY = "symmetry", "Symmetry invariance"
    CARTAN_MU = "cartan-mu", "Cartan mu evidence"
