"""
Pydantic schema for one parsed command-line invocation.
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from app.schemas.graph import K_QUANTITIES, Quantity

Subcommand = Literal["gen", "solve", "bounds", "product", "bisect", "verify"]
OutputFormat = Literal["text", "json"]

# Number of graph files each subcommand reads (None: any number)
_GRAPH_ARITY = {"gen": 0, "solve": 1, "bounds": 1, "product": 2, "bisect": 1, "verify": None}


class Command(BaseModel):
    """
    A validated command: exactly one subcommand, its graph inputs and flags.

    verify with no graph paths runs the built-in corpus.
    """
    subcommand: Subcommand
    graphs: List[str] = Field(default_factory=list, description="Edge-list file paths")
    generator: Optional[List[str]] = Field(None, description="Generator kind followed by its parameters")
    k: Optional[int] = None
    r: Optional[int] = Field(None, ge=2)
    quantity: Optional[Quantity] = None
    is_global: bool = False
    budget: Optional[int] = Field(None, ge=1)
    threads: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = None
    output: Optional[str] = None
    format: OutputFormat = "text"

    @model_validator(mode="after")
    def _check_subcommand(self):
        arity = _GRAPH_ARITY[self.subcommand]
        if arity is not None and len(self.graphs) != arity:
            raise ValueError(f"'{self.subcommand}' takes {arity} graph file(s), got {len(self.graphs)}")

        if self.subcommand == "gen" and not self.generator:
            raise ValueError("'gen' needs a generator kind")
        if self.subcommand != "gen" and self.generator:
            raise ValueError(f"'{self.subcommand}' does not take a generator")

        if self.subcommand == "solve":
            if self.quantity is None:
                raise ValueError("'solve' needs --quantity")
            if self.quantity in K_QUANTITIES and self.k is None:
                raise ValueError(f"quantity '{self.quantity}' needs --k")
            if self.quantity == "cut" and self.r is None:
                raise ValueError("quantity 'cut' needs --r")
        elif self.quantity is not None:
            raise ValueError(f"--quantity is only valid for 'solve', not '{self.subcommand}'")

        if self.subcommand in ("bounds", "bisect") and self.k is None:
            raise ValueError(f"'{self.subcommand}' needs --k")
        return self
