from marshmallow import Schema, fields


def complex_pair(value):
    value = complex(value)
    return [float(value.real), float(value.imag)]


class ComplexField(fields.Field):
    """Complex numbers as ``[re, im]`` pairs."""

    def _serialize(self, value, attr, obj, **kwargs):
        return None if value is None else complex_pair(value)


class ConditionSchema(Schema):
    word = fields.Str()
    probability = fields.Float()


class ConditionReportSchema(Schema):
    positivity = fields.Method("dump_positivity")
    p_pos = fields.Float()
    zeros = fields.Method("dump_zeros")
    max_zero = fields.Float()
    passed = fields.Bool()
    tol_zero = fields.Float()
    tol_pos = fields.Float()
    flags = fields.List(fields.Str())

    def dump_positivity(self, report):
        return str(report.positivity)

    def dump_zeros(self, report):
        rows = [{"word": str(w), "probability": p} for w, p in zip(report.zero_words, report.zeros)]
        return ConditionSchema(many=True).dump(rows)


def _complement(pair, setting):
    if pair.complement_ray(setting) is None:
        return None
    return list(pair.outcome_ray(setting, 1))


class PartySettingsSchema(Schema):
    party = fields.Int()
    a = fields.List(ComplexField())
    b = fields.List(ComplexField())
    a1 = fields.List(ComplexField(), allow_none=True)
    b1 = fields.List(ComplexField(), allow_none=True)


class SettingsSchema(Schema):
    """
    Normalized outcome-0 rays per party, plus the outcome-1 rays when they
    restrict the measurement subspace. Party labels are 1-based.
    """
    parties = fields.Method("dump_parties")
    provenance = fields.Method("dump_provenance")

    def dump_parties(self, settings):
        rows = [
            {
                "party": k + 1,
                "a": list(pair.ray("a")),
                "b": list(pair.ray("b")),
                "a1": _complement(pair, "a"),
                "b1": _complement(pair, "b"),
            }
            for k, pair in enumerate(settings)
        ]
        return PartySettingsSchema(many=True).dump(rows)

    def dump_provenance(self, settings):
        return {
            key: complex_pair(value) if isinstance(value, complex) else value
            for key, value in settings.provenance.items()
        }


class CertificateSchema(Schema):
    verdict = fields.Method("dump_verdict")
    margin = fields.Float()
    reconstruction_error = fields.Float(allow_none=True)
    pivots = fields.Int()
    support = fields.Method("dump_support")

    def dump_verdict(self, certificate):
        return certificate.verdict.value

    def dump_support(self, certificate):
        if certificate.weights is None:
            return None
        return int((certificate.weights > 1e-12).sum())


class CanonicalSchema(Schema):
    h = ComplexField()
    u = fields.Float()
    v = fields.Float()
    s = fields.Float()
    t = fields.Float()
    party_permutation = fields.Method("dump_permutation")
    closest_overlap = ComplexField(allow_none=True)

    def dump_permutation(self, canon):
        return [k + 1 for k in canon.party_permutation]


class SubspaceSchema(Schema):
    branch = fields.Method("dump_branch")
    kets = fields.Method("dump_kets")

    def dump_branch(self, record):
        return record.branch.value

    def dump_kets(self, record):
        return [
            [[complex_pair(c) for c in ket] for ket in kets]
            for kets in record.kets
        ]
