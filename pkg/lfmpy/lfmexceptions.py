"""
Copyright © 2024 lfmpy contributors.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing,
software distributed under the License is distributed on an
"AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
KIND, either express or implied.  See the License for the
specific language governing permissions and limitations
under the License.

"""
from typing import Any, Optional, Sequence


class LfmError(Exception):
    """Base class for errors in this package"""

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message


class LfmValueError(LfmError):
    pass


class LfmUninitialisedError(LfmError):
    pass


class LfmPreconditionError(LfmValueError):
    pass


class LfmMapFormatError(LfmValueError):
    pass


class LfmGridSpecError(LfmValueError):
    pass


class LfmSingularMatrixError(LfmError):
    def __init__(self, message="", determinant: Optional[complex] = None):
        super().__init__(message=message)
        self._determinant = determinant

    @property
    def determinant(self) -> Optional[complex]:
        return self._determinant

    def __str__(self):
        result = self.message or "Matrix is singular"
        if self.determinant is not None:
            result = f"{result} (det = {self.determinant:.3e})"
        return result


class LfmZeroEigenvalueError(LfmSingularMatrixError):
    pass


class LfmDegenerateCompositionError(LfmSingularMatrixError):
    pass


class LfmIllConditionedError(LfmError):
    def __init__(self, message="", residual: Optional[float] = None):
        super().__init__(message=message)
        self._residual = residual

    @property
    def residual(self) -> Optional[float]:
        return self._residual

    def __str__(self):
        result = self.message or "Decomposition is ill conditioned"
        if self.residual is not None:
            result = f"{result} (residual = {self.residual:.3e})"
        return result


class LfmPoleAtPointError(LfmError):
    def __init__(self, message="", point: Any = None):
        super().__init__(message=message)
        self._point = point

    @property
    def point(self) -> Any:
        return self._point


class LfmBranchCutError(LfmError):
    def __init__(self, message="", value: Any = None):
        super().__init__(message=message)
        self._value = value

    @property
    def value(self) -> Any:
        return self._value


class LfmDegenerateAllFixedError(LfmError):
    pass


class LfmNoConvergenceError(LfmError):
    def __init__(self, message="", iterations: int = 0, last_step: float = None):
        super().__init__(message=message)
        self.iterations = iterations
        self.last_step = last_step

    def __str__(self):
        result = self.message or "Iteration did not converge"
        return f"{result} after {self.iterations} iterations (last step {self.last_step})"


class LfmAmbiguousDWError(LfmError):
    def __init__(self, message="", candidates: Sequence[Any] = ()):
        super().__init__(message=message)
        self._candidates = tuple(candidates)

    @property
    def candidates(self) -> tuple:
        return self._candidates


class LfmBranchAmbiguityWarning(UserWarning):
    """Issued when a fractional power is taken on the principal branch cut"""
