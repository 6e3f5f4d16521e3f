from .reports import build_success_report, build_error_report, render_json, render_text
from .errors import BaseError, InputError, ConstructionError, NotFullyEntangledError, NotEntangledError
