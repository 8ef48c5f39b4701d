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

Thread-local "current value" contexts. A subclass of ``BaseContext`` gets a
``current`` class attribute; entering an instance with ``with`` makes it current
on this thread until the block ends, and blocks nest.
"""
import logging
from threading import local
from typing import List, Optional, Type, TypeVar

from lfmpy.lfmexceptions import LfmUninitialisedError

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())

T = TypeVar("T")

_state = local()


def _stack(owner: type) -> List:
    """Entered instances of ``owner`` on this thread, innermost last"""
    stacks = getattr(_state, "stacks", None)
    if stacks is None:
        stacks = _state.stacks = {}
    return stacks.setdefault(owner, [])


# metaclass so that `current` is a property of the class itself
class BaseMeta(type):
    @property
    def current(cls: Type[T]) -> T:
        stack = _stack(_owner(cls))
        if stack:
            return stack[-1]
        default = cls._default_current()
        if default is None:
            raise LfmUninitialisedError(f"No {cls.__name__} has been entered on this thread")
        return default


def _owner(cls: type) -> type:
    # the class directly below BaseContext holds the slot shared by its subclasses
    for klass in cls.__mro__:
        if BaseContext in klass.__bases__:
            return klass
    return cls


class BaseContext(metaclass=BaseMeta):
    """Base for values that are implicitly available to the code they wrap.

    Subclasses override ``_default_current`` to supply a value when nothing is
    entered; the base returns None, so ``current`` raises LfmUninitialisedError.
    """

    @classmethod
    def _default_current(cls) -> Optional["BaseContext"]:
        return None

    def __enter__(self):
        _stack(_owner(type(self))).append(self)
        _logger.debug(f"Entered {self!r}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        stack = _stack(_owner(type(self)))
        if stack and stack[-1] is self:
            stack.pop()
        else:
            _logger.warning(f"{self!r} left out of order")
            stack[:] = [entry for entry in stack if entry is not self]

    @property
    def is_entered(self) -> bool:
        """True while this instance is the innermost entered one on this thread"""
        stack = _stack(_owner(type(self)))
        return bool(stack) and stack[-1] is self
