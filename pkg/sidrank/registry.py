# -*- coding: utf-8 -*-
import inspect
from abc import abstractmethod, ABC
from typing import Dict, Generic, Optional, Tuple, Type, TypeVar


class RegistryObject(ABC):
    """
    Something looked up by name: a feature, a phase, a command, an action or a model variant.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """
        Unique name in its registry.
        """

    @property
    def description(self) -> Optional[str]:
        """
        Human readable description, the class docstring unless given.
        """
        return inspect.getdoc(self.__class__)


class DefaultRegistryObject(RegistryObject):
    """
    Registry object with a name and description given at construction.
    """

    def __init__(self, name: str, description: Optional[str] = None):
        self._name = name
        self._description = description

    @property
    def name(self) -> str:
        return self._name

    @property
    def description(self) -> Optional[str]:
        return self._description or super().description


T = TypeVar('T')  # pylint:disable=invalid-name


class Registry(Generic[T]):
    """
    Objects of a given type by unique name, listed in registration order.
    """

    def __init__(self, clazz: Type[T], type_name="Object"):
        self._clazz = clazz
        self._type_name = type_name
        self._objects = {}  # type: Dict[str, T]

    def register(self, obj: T, name: Optional[str] = None) -> T:
        """
        Register obj under name, its own name by default.
        """
        if name is None:
            if not hasattr(obj, "name"):
                raise ValueError("Name should be provided to register this kind of object")
            name = obj.name
        if not isinstance(obj, self._clazz):
            raise ValueError('%s name "%s" should be an instance of %s' % (self._type_name, name,
                                                                          self._clazz.__name__))
        if name in self._objects:
            raise ValueError('%s name "%s" is already registered' % (self._type_name, name))
        self._objects[name] = obj
        return obj

    def has(self, name: str) -> bool:
        """
        Whether name is registered.
        """
        return name in self._objects

    def get(self, name: str) -> T:
        """
        Object registered under name.
        """
        if name not in self._objects:
            raise ValueError('%s name "%s" is not registered' % (self._type_name, name))
        return self._objects[name]

    def unregister(self, name: str) -> T:
        """
        Remove and return the object registered under name.
        """
        obj = self.get(name)
        del self._objects[name]
        return obj

    def names(self) -> Tuple[str, ...]:
        """
        Registered names.
        """
        return tuple(self._objects)

    def all(self) -> Tuple[T, ...]:
        """
        Registered objects.
        """
        return tuple(self._objects.values())

    def clear(self):
        """
        Forget every object.
        """
        self._objects.clear()

    def close(self):
        """
        Call close() on objects having one, then forget every object.
        """
        for obj in self._objects.values():
            close = getattr(obj, "close", None)
            if callable(close):
                close()
        self.clear()
