import math

from marshmallow import Schema, ValidationError, fields, validate, validates, validates_schema


class AmplitudeEntrySchema(Schema):
    """One ``i1 ... in re im`` line of a state file."""
    index = fields.List(fields.Int(validate=validate.Range(min=0)), required=True)
    re = fields.Float(required=True, allow_nan=False)
    im = fields.Float(required=True, allow_nan=False)


class StateFileSchema(Schema):
    """
    Parsed state file: ``dims d1 ... dn`` followed by sparse amplitudes.
    Index arity and range are checked against ``dims``.
    """
    dims = fields.List(fields.Int(validate=validate.Range(min=1)), required=True, validate=validate.Length(min=2))
    entries = fields.List(fields.Nested(AmplitudeEntrySchema), required=True)

    @validates_schema
    def validate_indices(self, data, **kwargs):
        dims = data.get("dims", [])
        for line, entry in enumerate(data.get("entries", []), start=1):
            index = entry["index"]
            if len(index) != len(dims):
                raise ValidationError(f"Amplitude {line} has {len(index)} indices for {len(dims)} parties", "entries")
            if any(i >= d for i, d in zip(index, dims)):
                raise ValidationError(f"Amplitude {line} index {index} outside dims {dims}", "entries")


class SettingsLineSchema(Schema):
    """``party obs`` and one or two rays as ``re im`` pairs, with a 1-based party label."""
    party = fields.Int(required=True, validate=validate.Range(min=1))
    obs = fields.Str(required=True, validate=validate.OneOf(["a", "b"]))
    components = fields.List(fields.Float(allow_nan=False), required=True)

    @validates("components")
    def validate_components(self, value, **kwargs):
        if len(value) < 2 or len(value) % 2:
            raise ValidationError("Ray components must be an even, nonzero number of reals (re, im pairs)")
        if not any(math.hypot(value[i], value[i + 1]) > 0 for i in range(0, len(value), 2)):
            raise ValidationError("Ray must not be zero")


class RunConfigSchema(Schema):
    seed = fields.Int(required=True)
    tol_zero = fields.Float(load_default=1e-9, validate=validate.Range(min=0))
    tol_pos = fields.Float(load_default=1e-12, validate=validate.Range(min=0))
    lp_tol = fields.Float(load_default=1e-7, validate=validate.Range(min=0))
    restarts = fields.Int(load_default=24, validate=validate.Range(min=1))
    iters = fields.Int(load_default=2000, validate=validate.Range(min=1))
    as_json = fields.Bool(load_default=False)
