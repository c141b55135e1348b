from pydantic import BaseModel, ConfigDict


class BaseDTO(BaseModel):
    """
    BaseDTO is a BaseModel that rejects unknown fields
    """

    model_config = ConfigDict(extra="forbid")
