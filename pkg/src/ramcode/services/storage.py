"""
File storage for complexes, codes, vectors and reports.

Every write goes to a temporary file in the target directory and is then
moved into place with os.replace.
"""

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Union

from pydantic import ValidationError

from ..core.exceptions import FileFormatError
from ..core.logging import get_module_logger
from ..codes.classical import BipartiteCode, CodeKind, path_code
from ..codes.product import ProductCode
from ..complexes.chain import ChainComplex
from ..complexes.simplicial import SimplicialComplex
from ..linalg.gf2 import BinaryMatrix, BitVector, vector_from_text, vector_to_text
from ..models.base import BaseModel
from ..models.files import ChainComplexFile, CodeFile, ProductFile, SimplicialComplexFile

logger = get_module_logger("services.storage")

PathLike = Union[str, Path]
ComplexLike = Union[ChainComplex, SimplicialComplex]


class StorageService:
    """Reads and atomically writes ramcode artifacts."""

    def write_text(self, path: PathLike, text: str) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.debug(f"wrote {target}")
        return target

    def read_text(self, path: PathLike) -> str:
        source = Path(path)
        if not source.is_file():
            raise FileFormatError(f"no such file: {source}", path=str(source))
        return source.read_text(encoding="utf-8")

    # -- JSON -------------------------------------------------------------

    def write_model(self, path: PathLike, model: BaseModel) -> Path:
        return self.write_text(path, model.to_json())

    def write_json(self, path: PathLike, data: Dict[str, Any]) -> Path:
        return self.write_text(path, json.dumps(data, sort_keys=True, indent=2) + "\n")

    def read_json(self, path: PathLike) -> Dict[str, Any]:
        try:
            data = json.loads(self.read_text(path))
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
        if not isinstance(data, dict):
            raise FileFormatError(f"{path}: expected a JSON object")
        return data

    # -- matrices and vectors ---------------------------------------------

    def write_matrix(self, path: PathLike, m: BinaryMatrix) -> Path:
        return self.write_text(path, m.to_text())

    def read_matrix(self, path: PathLike) -> BinaryMatrix:
        return BinaryMatrix.from_text(self.read_text(path))

    def write_vector(self, path: PathLike, v: BitVector) -> Path:
        return self.write_text(path, vector_to_text(v))

    def read_vector(self, path: PathLike) -> BitVector:
        return vector_from_text(self.read_text(path))

    # -- domain objects ---------------------------------------------------

    def save_complex(self, path: PathLike, X: ComplexLike) -> Path:
        return self.write_model(path, X.to_file_model())

    def load_complex(self, path: PathLike) -> ComplexLike:
        return self._complex_from_dict(self.read_json(path), path)

    def save_code(self, path: PathLike, code: BipartiteCode) -> Path:
        """JSON keeps the kind and decoder radius; any other suffix writes the bare matrix."""
        if Path(path).suffix == ".json":
            return self.write_model(path, code.to_file_model())
        return self.write_matrix(path, code.h)

    def load_code(self, path: PathLike) -> BipartiteCode:
        if Path(path).suffix == ".json":
            return BipartiteCode.from_file_model(self._validate(CodeFile, self.read_json(path), path))
        h = self.read_matrix(path)
        if h.n_cols >= 2 and h == path_code(h.n_cols).h:
            return path_code(h.n_cols)
        return BipartiteCode(h, kind=CodeKind.CUSTOM)

    def save_product(self, path: PathLike, P: ProductCode) -> Path:
        return self.write_model(path, P.to_file_model())

    def load_product(self, path: PathLike) -> ProductCode:
        return ProductCode.from_file_model(self._validate(ProductFile, self.read_json(path), path))

    def load_any(self, path: PathLike) -> Union[ComplexLike, ProductCode]:
        """A product, simplicial complex or chain complex, told apart by their keys."""
        data = self.read_json(path)
        if "code" in data and "complex" in data:
            return ProductCode.from_file_model(self._validate(ProductFile, data, path))
        return self._complex_from_dict(data, path)

    def _complex_from_dict(self, data: Dict[str, Any], path: PathLike) -> ComplexLike:
        if "vertices" in data:
            return SimplicialComplex.from_file_model(self._validate(SimplicialComplexFile, data, path))
        if "face_counts" in data:
            return ChainComplex.from_file_model(self._validate(ChainComplexFile, data, path))
        raise FileFormatError(f"{path}: neither a simplicial nor a chain complex")

    @staticmethod
    def _validate(model: type, data: Dict[str, Any], path: PathLike):
        try:
            return model.model_validate(data)
        except ValidationError as exc:
            raise FileFormatError(f"{path}: {exc.error_count()} schema errors: {exc.errors()[0]['msg']}") from exc
