"""
.. currentmodule:: chirality
.. autoclass:: PytestArithmeticContextFactory
.. autofunction:: register_pytest_arithmetic_context_factory
.. autofunction:: pytest_generate_tests_for_arithmetic_contexts
"""

__copyright__ = """
Copyright (C) 2024 chirality contributors
"""

__license__ = """
Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
"""

from typing import Any, Callable, Dict, Sequence, Type, Union

from chirality.arithmetic import (
    ArithmeticContext, ExactArithmeticContext, FloatArithmeticContext)


# {{{ arithmetic context factories

class PytestArithmeticContextFactory:
    actx_class: Type[ArithmeticContext] = ArithmeticContext

    @classmethod
    def is_available(cls) -> bool:
        return cls.actx_class.is_available()

    def __call__(self) -> ArithmeticContext:
        return self.actx_class()

    def __str__(self) -> str:
        return f"<{self.actx_class.__name__}>"

    def __repr__(self) -> str:
        return str(self)


class _PytestExactArithmeticContextFactory(PytestArithmeticContextFactory):
    actx_class = ExactArithmeticContext


class _PytestFloatArithmeticContextFactory(PytestArithmeticContextFactory):
    actx_class = FloatArithmeticContext


_ARITHMETIC_CONTEXT_FACTORY_REGISTRY: \
        Dict[str, Type[PytestArithmeticContextFactory]] = {
                "exact": _PytestExactArithmeticContextFactory,
                "float": _PytestFloatArithmeticContextFactory,
                }


def register_pytest_arithmetic_context_factory(
        name: str,
        factory: Type[PytestArithmeticContextFactory]) -> None:
    if name in _ARITHMETIC_CONTEXT_FACTORY_REGISTRY:
        raise ValueError(f"factory '{name}' already exists")

    _ARITHMETIC_CONTEXT_FACTORY_REGISTRY[name] = factory

# }}}


# {{{ pytest integration

def pytest_generate_tests_for_arithmetic_contexts(
        factories: Sequence[Union[str, Type[PytestArithmeticContextFactory]]], *,
        factory_arg_name: str = "actx_factory",
        ) -> Callable[[Any], None]:
    """Parametrize tests over :class:`~chirality.ArithmeticContext`\\ s.

    Test functions taking an argument named *factory_arg_name* receive a
    callable returning a fresh context, and run once per selected context:

    .. code-block:: python

        pytest_generate_tests = pytest_generate_tests_for_arithmetic_contexts([
            "exact", "float",
            ])

    The environment variable ``CHIRALITY_TEST``, a comma-separated list of
    context names, overrides *factories*.

    :arg factories: a list of identifiers or
        :class:`PytestArithmeticContextFactory` classes (not instances).
    """

    # {{{ get all requested arithmetic context factories

    import os
    env_factory_string = os.environ.get("CHIRALITY_TEST", None)

    if env_factory_string is not None:
        unique_factories = set(env_factory_string.split(","))
    else:
        unique_factories = set(factories)               # type: ignore[arg-type]

    if not unique_factories:
        raise ValueError("no arithmetic context factories were selected")

    unknown_factories = [
            factory for factory in unique_factories
            if (isinstance(factory, str)
                and factory not in _ARITHMETIC_CONTEXT_FACTORY_REGISTRY)
            ]

    if unknown_factories:
        if env_factory_string is not None:
            raise RuntimeError(
                    "unknown arithmetic context factories passed through "
                    f"environment variable 'CHIRALITY_TEST': {unknown_factories}")
        else:
            raise ValueError(f"unknown arithmetic contexts: {unknown_factories}")

    available_factories = sorted({
        factory for key in unique_factories
        for factory in [_ARITHMETIC_CONTEXT_FACTORY_REGISTRY.get(key, key)]
        if (
            not isinstance(factory, str)
            and issubclass(factory, PytestArithmeticContextFactory)
            and factory.is_available())
        }, key=lambda factory: factory.actx_class.name)

    # }}}

    def inner(metafunc: Any) -> None:
        if factory_arg_name not in metafunc.fixturenames:
            return

        metafunc.parametrize(factory_arg_name,
                [factory() for factory in available_factories],
                ids=[factory.actx_class.name for factory in available_factories])

    return inner

# }}}


# vim: foldmethod=marker
