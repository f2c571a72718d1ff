from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from models.geometry import Point, Poly, Rational


class Output(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)


class Result(Output):
    @property
    def ok(self) -> bool:
        return True


class ProductResult(Result):
    kind: str
    image_dimension: int
    kernel_dimensions: list[tuple[int, int]] = Field(default_factory=list)
    point: Point | None = None
    plane: Poly | None = None
    surface: Poly | None = None
    degree: int | None = None
    morphism: bool
    base_point_patterns: list[list[int]] = Field(default_factory=list)
    elimination: list[Poly] | None = None
    oracle_agrees: bool | None = None


class SectionResult(Output):
    plane: int
    status: str
    center: Point | None = None


class SCLOutput(Result):
    sections: list[SectionResult]
    all_reducible: bool
    centers_distinct: bool
    centers_off_other_planes: bool
    centers_coplanar: bool | None = None


class AnalyzeResult(Result):
    equation: Poly
    smoothness: str
    rank: int
    vertex: Point | None = None
    adjugate_diagonal: list[Rational]
    in_closure_Y: bool
    scl: SCLOutput


class ReconstructResult(Result):
    quadric: Poly
    coefficients: list[Rational]
    rank: int
    kernel_dimension: int


class GroebnerResult(Result):
    order: str
    basis: list[Poly]
    dimension: int


class ComponentResult(Output):
    zero_variables: list[str]
    dimension: int
    binomial: str | None = None
    line_in_coordinate_plane: bool


class FiberResult(Result):
    generators: list[Poly]
    printed_generators: list[Poly]
    only_computed: list[str]
    only_printed: list[str]
    dimension: int
    oracle_dimension: int
    claimed_dimension: int
    components: list[ComponentResult]
    discrepancy_note: str
    torus_orbit_check: dict[str, int]


class ComponentSurvey(Output):
    variables: list[str]
    samples: int
    ranks: dict[int, int]


class SurveyResult(Result):
    seed: int
    parameter_range: int
    generic_samples: int
    generic_ranks: dict[int, int]
    components: list[ComponentSurvey]
    full_rank_count: int
    minor_checks: int
    nonvanishing_minors: int
    note: str

    @property
    def ok(self) -> bool:
        return self.full_rank_count == 0 and self.nonvanishing_minors == 0


class SurfaceSection(Output):
    plane: int
    degree: int
    equation: str
    singular: bool


class SurfaceResult(Result):
    equation: Poly
    degree: int
    singular_locus_dimension: int
    sections: list[SurfaceSection]
    plane_components: list[int] = Field(default_factory=list)
    vertex: Point | None = None
    is_cone: bool | None = None
    details: dict[str, Any] = Field(default_factory=dict)
