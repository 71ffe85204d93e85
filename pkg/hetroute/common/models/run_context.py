from typing import Optional

from pydantic import BaseModel, Field


class RunContext(BaseModel):
    """Context shared by every event and span of one harness run.
    run_id: content hash of the config snapshot and seed, stable across reruns
    mode: train, eval, bench, oracle or sweep
    seed: master seed the run was started with
    label: optional free-form tag, e.g. the sweep cell being trained
    """

    run_id: str
    mode: str
    seed: int
    label: Optional[str] = Field(default="")

    @classmethod
    def default(cls) -> "RunContext":
        return cls(run_id="adhoc", mode="adhoc", seed=0)
