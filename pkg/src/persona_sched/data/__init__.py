"""Bundled example data: a synthetic household reference and a template fitted to it."""

from importlib import resources

from ..core import ScheduleCollection, ScheduleTemplate
from ..formats import load_reference_collection, load_template

REFERENCE_FILE = "reference_household.json"
TEMPLATE_FILE = "template_household.json"
FLOORPLAN_FILE = "two_room.txt"
LOCATIONS_FILE = "two_room.json"


def read_text(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text()


def household_reference() -> ScheduleCollection:
    return load_reference_collection(read_text(REFERENCE_FILE))


def household_template() -> ScheduleTemplate:
    return load_template(read_text(TEMPLATE_FILE))
