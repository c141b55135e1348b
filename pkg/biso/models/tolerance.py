from pydantic import BaseModel, ConfigDict, PositiveFloat, model_validator


class Tolerance(BaseModel):
    """
    Declared floating-point semantics shared by every comparison.

    ``abs_eps`` is the slack granted to non-strict inequalities,
    ``strict_margin`` the headroom a strict inequality must clear and
    ``root_eps`` the accuracy of root finding (inverse entropy, capacity
    matching).
    """

    model_config = ConfigDict(frozen=True)

    abs_eps: PositiveFloat = 1e-9
    strict_margin: PositiveFloat = 1e-6
    root_eps: PositiveFloat = 1e-12

    @model_validator(mode="after")
    def _check_ordering(self) -> "Tolerance":
        if self.strict_margin <= self.abs_eps:
            raise ValueError("strict_margin must be larger than abs_eps")
        return self
