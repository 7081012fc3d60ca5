"""Exception hierarchy shared across the package.

Every error raised by vgpn code derives from VgpnError so callers can catch
the whole family, a module's family (e.g. LanguageError), or one precise
condition.
"""


class VgpnError(Exception):
    """Base class for all vgpn errors."""


# --- command language ------------------------------------------------------

class LanguageError(VgpnError):
    """A command could not be understood."""


class EmptyCommand(LanguageError):
    pass


class UnknownWord(LanguageError):
    def __init__(self, word: str):
        self.word = word
        super().__init__(f"unknown word: {word!r}")


class NoVerb(LanguageError):
    pass


class MultipleVerbs(LanguageError):
    pass


class UngrammaticalCommand(LanguageError):
    pass


class NoTemplate(LanguageError):
    def __init__(self, canonical: str):
        self.canonical = canonical
        super().__init__(f"no instruction template matches {canonical!r}")


class LexiconError(VgpnError):
    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class TemplateRegistryError(VgpnError):
    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class AmbiguousRegistry(TemplateRegistryError):
    pass


# --- pointing geometry -----------------------------------------------------

class GeometryError(VgpnError):
    pass


class NoArmVisible(GeometryError):
    pass


class DegenerateArm(GeometryError):
    pass


class NoGroundIntersection(GeometryError):
    pass


class AimTooClose(GeometryError):
    pass


# --- world model -----------------------------------------------------------

class WorldError(VgpnError):
    pass


class NoSuchObject(WorldError):
    def __init__(self, category: str, properties):
        self.category = category
        self.properties = frozenset(properties)
        props = " ".join(sorted(self.properties))
        desc = f"{props} {category}".strip()
        super().__init__(f"no object matches description: {desc!r}")


class MissingIntersection(WorldError):
    pass


class SceneInvalid(WorldError):
    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"scene invalid at {where}: {message}")


# --- navigation ------------------------------------------------------------

class PlanningError(VgpnError):
    pass


class StartOccupied(PlanningError):
    pass


class GoalOccupied(PlanningError):
    pass


class Unreachable(PlanningError):
    pass


# --- harness / service -----------------------------------------------------

class SpecInvalid(VgpnError):
    pass


class EmptyInput(VgpnError):
    pass


class UnknownSession(VgpnError):
    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"unknown session: {session_id}")
