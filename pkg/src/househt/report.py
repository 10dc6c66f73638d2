from dataclasses import asdict, dataclass, field

from .errors import ContractViolation


@dataclass
class HtConfig:
    nb: int = 32
    ell: int = 4
    max_ir: int = 10
    seed: int = 0
    accelerated: bool = True
    debug: bool = False

    def __post_init__(self):
        if self.nb < 1:
            raise ContractViolation("nb must be at least 1")
        if self.ell < 2:
            raise ContractViolation("ell must be at least 2")
        if self.max_ir < 0:
            raise ContractViolation("max_ir must be nonnegative")

    @property
    def block_mode(self):
        """Block triangular B between panels, else plain triangular."""
        return self.accelerated and self.ell >= 3


@dataclass
class ReductionReport:
    flops: int = 0
    ir_extra_columns: int = 0
    ir_failed_columns: int = 0
    ir_steps_total: int = 0
    absorptions: int = 0
    premature_absorptions: int = 0
    replacements: int = 0
    residual_a: float = float("nan")
    residual_b: float = float("nan")
    orth_q: float = float("nan")
    orth_z: float = float("nan")
    events: list = field(default_factory=list, repr=False)

    def as_dict(self):
        d = asdict(self)
        d.pop("events")
        return d
