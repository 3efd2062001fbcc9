"""Behavior-tree engine.

Composite nodes come in two flavours. A plain Sequence or Fallback that
returns Running remembers the running child and resumes there on the next
tick. A *recursive* one restarts from its first child on every tick, so
earlier conditions are always re-checked.
"""
from __future__ import annotations

import enum
import logging
from typing import Any, Callable, Sequence as Seq

log = logging.getLogger(__name__)


class NodeStatus(enum.Enum):
    SUCCESS = "Success"
    FAILURE = "Failure"
    RUNNING = "Running"


class InvalidTree(ValueError):
    pass


class BtNode:
    name: str = "node"

    def tick(self, bb: Any) -> NodeStatus:
        status = self._tick(bb)
        if not isinstance(status, NodeStatus):
            raise InvalidTree(f"node {self.name!r} returned {status!r}")
        trace = getattr(bb, "trace", None)
        if trace is not None:
            trace.append((self.name, status))
        return status

    def _tick(self, bb: Any) -> NodeStatus:
        raise NotImplementedError

    def reset(self) -> None:
        pass

    def validate(self) -> None:
        pass

    def walk(self):
        yield self


class Root(BtNode):
    def __init__(self, child: BtNode, name: str = "Root"):
        self.child = child
        self.name = name

    def validate(self) -> None:
        if not isinstance(self.child, BtNode):
            raise InvalidTree("invalid tree: Root needs exactly one child node")
        self.child.validate()

    def _tick(self, bb):
        return self.child.tick(bb)

    def reset(self):
        self.child.reset()

    def walk(self):
        yield self
        yield from self.child.walk()


class _Composite(BtNode):
    # status that ends the scan early besides Running
    _stop_on: NodeStatus
    _default: NodeStatus

    def __init__(self, children: Seq[BtNode], recursive: bool = False, name: str | None = None):
        self.children = list(children)
        self.recursive = recursive
        self.resume_index = 0
        self.name = name or type(self).__name__

    def validate(self) -> None:
        if not self.children:
            raise InvalidTree(f"invalid tree: {self.name} has no children")
        for c in self.children:
            if not isinstance(c, BtNode):
                raise InvalidTree(f"invalid tree: {self.name} has a non-node child")
            c.validate()

    def _tick(self, bb):
        start = 0 if self.recursive else self.resume_index
        for i in range(start, len(self.children)):
            status = self.children[i].tick(bb)
            if status is NodeStatus.RUNNING:
                self.resume_index = i
                return status
            if status is self._stop_on:
                self.resume_index = 0
                return status
        self.resume_index = 0
        return self._default

    def reset(self):
        self.resume_index = 0
        for c in self.children:
            c.reset()

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


class Sequence(_Composite):
    """Succeeds when every child succeeds; stops at the first failure."""

    _stop_on = NodeStatus.FAILURE
    _default = NodeStatus.SUCCESS


class Fallback(_Composite):
    """Succeeds at the first child that succeeds; fails when all fail."""

    _stop_on = NodeStatus.SUCCESS
    _default = NodeStatus.FAILURE


class Condition(BtNode):
    def __init__(self, name: str, predicate: Callable[[Any], bool]):
        self.name = name
        self.predicate = predicate

    def _tick(self, bb):
        return NodeStatus.SUCCESS if self.predicate(bb) else NodeStatus.FAILURE


class Leaf(BtNode):
    def __init__(self, name: str, action: Callable[[Any], NodeStatus]):
        self.name = name
        self.action = action

    def _tick(self, bb):
        return self.action(bb)


def tick(node: BtNode, bb: Any) -> NodeStatus:
    """Validate the tree and tick it once."""
    if not isinstance(node, BtNode):
        raise InvalidTree("invalid tree")
    node.validate()
    return node.tick(bb)
