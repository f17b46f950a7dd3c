from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Taylor guards for the trigonometric coefficients
    SMALL_ANGLE: float = 1e-4
    ADJOINT_SMALL_ANGLE: float = 1e-3

    # log_so3 switches to the axis branch above pi - NEAR_PI_MARGIN
    NEAR_PI_MARGIN: float = 1e-6
    # inverse Jacobians are refused this close to a nonzero multiple of 2*pi
    SINGULAR_MARGIN: float = 1e-6

    ORTHOGONALITY_TOL: float = 1e-9
    STRUCTURE_TOL: float = 1e-9

    # jacobian() switches from block assembly to the quartic polynomial form
    QUARTIC_JACOBIAN_MIN_K: int = 2

    GN_MAX_HALVINGS: int = 20
    GN_CONDITION_LIMIT: float = 1e12

    RECOVER_MAX_ITERS: int = 100
    RECOVER_TOL: float = 1e-10

    SAMPLE_CHUNK: int = Field(4096, gt=0)

    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(env_file=".env", env_prefix="SEK3_", extra="ignore")

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self.LOG_LEVEL = (self.LOG_LEVEL or "WARNING").upper()


settings = Settings()
