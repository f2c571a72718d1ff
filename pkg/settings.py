from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    gb_step_limit: int = Field(200000, gt=0)
    seed: int = 20240611
    survey_bound: int = Field(100, gt=0)
    log_path: str = "logs/hadamard.log"
    log_level: str = "INFO"

    class Config:
        env_prefix = "HS_"
        env_file = ".env"
        env_file_encoding = "utf-8"


settings = Settings()
