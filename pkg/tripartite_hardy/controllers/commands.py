import click
from marshmallow import ValidationError

from tripartite_hardy.config import Config, logging
from tripartite_hardy.integrations.state_files import (
    dump_settings_text,
    dump_state_text,
    read_settings_file,
    read_state_file,
    write_text,
)
from tripartite_hardy.schemas.file_schema import RunConfigSchema
from tripartite_hardy.schemas.report_schema import (
    CanonicalSchema,
    CertificateSchema,
    ConditionReportSchema,
    SettingsSchema,
    SubspaceSchema,
    complex_pair,
)
from tripartite_hardy.services.hardy3 import singular_z_values
from tripartite_hardy.services.hardy3_sym import evaluate_chenq_conditions
from tripartite_hardy.services.hardy_n import evaluate_hardy_n, hardy_set
from tripartite_hardy.services.magic_basis import find_magic_basis
from tripartite_hardy.services.ns_bilocal import check_bilocal, noise_threshold
from tripartite_hardy.services.pipeline import canonical_pipeline, run_hardy_test
from tripartite_hardy.services.qudit_reduce import reduce_to_3qubit
from tripartite_hardy.services.search import maximize_success, q3_constant
from tripartite_hardy.services.tensor_core import correlation_table
from tripartite_hardy.utils.errors import InputError
from tripartite_hardy.utils.reports import build_success_report, render_json, render_text

run_config_schema = RunConfigSchema()

existing_file = click.Path(exists=True, dir_okay=False)


def emit(ctx: click.Context, report):
    as_json = ctx.meta.get("as_json", False)
    click.echo(render_json(report) if as_json else render_text(report))


def _remember_format(ctx, param, value):
    ctx.meta["as_json"] = value
    return value


def json_option(f):
    return click.option(
        "--json", "as_json", is_flag=True, is_eager=True, callback=_remember_format,
        help="Emit a single JSON document instead of text.",
    )(f)


def seed_option(f):
    return click.option(
        "--seed", type=int, envvar="HW_SEED", default=lambda: Config.SEED, show_default="HW_SEED or 0",
        help="Seed of every random stream.",
    )(f)


def tolerance_options(f):
    f = click.option("--tol-zero", type=float, default=lambda: Config.TOL_ZERO, help="Zero-condition tolerance.")(f)
    f = click.option("--tol-pos", type=float, default=lambda: Config.TOL_POS, help="Positivity threshold.")(f)
    return f


def lp_option(f):
    return click.option("--lp-tol", type=float, default=lambda: Config.LP_TOL, help="Phase-1 feasibility tolerance.")(f)


def restarts_option(default):
    return click.option("--restarts", type=int, default=default, help="Number of seeded restarts.")


def _run_config(**values) -> dict:
    try:
        return run_config_schema.load({key: value for key, value in values.items() if value is not None})
    except ValidationError as err:
        logging.error(f"Validation error: {err.messages}")
        raise InputError("Invalid command options.", verboseMessage=err.messages)


@click.command("test")
@click.argument("statefile", type=existing_file)
@click.option("--settings-out", type=click.Path(dir_okay=False), help="Write the constructed settings to this file.")
@restarts_option(lambda: Config.PRODUCT_RESTARTS)
@lp_option
@tolerance_options
@seed_option
@json_option
@click.pass_context
def cmd_test(ctx, statefile, settings_out, restarts, lp_tol, tol_zero, tol_pos, seed, as_json):
    """Construct, evaluate and certify a Hardy-type test for STATEFILE."""
    config = _run_config(seed=seed, tol_zero=tol_zero, tol_pos=tol_pos, lp_tol=lp_tol, restarts=restarts)
    state = read_state_file(statefile)

    outcome = run_hardy_test(
        state,
        tol_zero=config["tol_zero"],
        tol_pos=config["tol_pos"],
        lp_tol=config["lp_tol"],
        restarts=config["restarts"],
        seed=config["seed"],
    )

    if settings_out:
        write_text(settings_out, dump_settings_text(outcome.settings))

    canonical = outcome.canonical
    data = {
        "dims": list(state.dims),
        "classification": str(canonical.state_class),
        "test": "symmetric" if outcome.symmetric_test else "asymmetric",
        "canonical": CanonicalSchema().dump(canonical.canon),
        "reduction": SubspaceSchema().dump(canonical.record) if canonical.record is not None else None,
        "settings": SettingsSchema().dump(outcome.settings),
        "conditions": ConditionReportSchema().dump(outcome.report),
        "lp": CertificateSchema().dump(outcome.certificate),
    }
    emit(ctx, build_success_report("Hardy test passed; correlations admit no bi-local model.", data=data))


@click.command("evaluate")
@click.argument("statefile", type=existing_file)
@click.argument("settingsfile", type=existing_file)
@click.option("--chenq", is_flag=True, help="Use P(~b a a) = 0 as the last zero condition (three parties).")
@tolerance_options
@json_option
@click.pass_context
def cmd_evaluate(ctx, statefile, settingsfile, chenq, tol_zero, tol_pos, as_json):
    """Evaluate the Hardy conditions for STATEFILE under SETTINGSFILE."""
    config = _run_config(seed=0, tol_zero=tol_zero, tol_pos=tol_pos)
    state = read_state_file(statefile)
    settings = read_settings_file(settingsfile, state.dims)

    if chenq:
        report = evaluate_chenq_conditions(state, settings, config["tol_zero"], config["tol_pos"])
    else:
        report = evaluate_hardy_n(state, settings, tol_zero=config["tol_zero"], tol_pos=config["tol_pos"])

    message = "Hardy conditions passed." if report.passed else "Hardy conditions failed."
    emit(ctx, build_success_report(message, data={"conditions": ConditionReportSchema().dump(report)}))


@click.command("verify")
@click.argument("statefile", type=existing_file)
@click.argument("settingsfile", type=existing_file)
@click.option("--noise", is_flag=True, help="Also bisect the white-noise weight that makes the table bi-local.")
@lp_option
@json_option
@click.pass_context
def cmd_verify(ctx, statefile, settingsfile, noise, lp_tol, as_json):
    """Decide whether the correlations of STATEFILE under SETTINGSFILE are bi-local."""
    config = _run_config(seed=0, lp_tol=lp_tol)
    state = read_state_file(statefile)
    settings = read_settings_file(settingsfile, state.dims)

    table = correlation_table(state, settings)
    certificate = check_bilocal(table, config["lp_tol"])
    data = {
        "summary": f"{certificate.verdict.value.upper()} margin={format(certificate.margin, '.17g')}",
        "lp": CertificateSchema().dump(certificate),
    }
    if noise:
        data["noise_threshold"] = noise_threshold(table, config["lp_tol"])

    emit(ctx, build_success_report("Bi-local membership decided.", data=data))


@click.command("canonical")
@click.argument("statefile", type=existing_file)
@restarts_option(lambda: Config.PRODUCT_RESTARTS)
@seed_option
@json_option
@click.pass_context
def cmd_canonical(ctx, statefile, restarts, seed, as_json):
    """Print the magic-basis canonical form and classification of STATEFILE."""
    config = _run_config(seed=seed, restarts=restarts)
    state = read_state_file(statefile)
    outcome = canonical_pipeline(state, restarts=config["restarts"], seed=config["seed"])

    data = {
        "classification": str(outcome.state_class),
        "canonical": CanonicalSchema().dump(outcome.canon),
        "singular_z": [complex_pair(z) for z in singular_z_values(outcome.canon)],
        "magic_residual": outcome.transform.residual,
        "converged": outcome.converged,
        "reduction": SubspaceSchema().dump(outcome.record) if outcome.record is not None else None,
    }
    emit(ctx, build_success_report("Canonical form computed.", data=data))


@click.command("reduce")
@click.argument("statefile", type=existing_file)
@click.option("--state-out", type=click.Path(dir_okay=False), help="Write the reduced state to this file.")
@restarts_option(lambda: Config.PRODUCT_RESTARTS)
@seed_option
@json_option
@click.pass_context
def cmd_reduce(ctx, statefile, state_out, restarts, seed, as_json):
    """Project STATEFILE, in its magic basis, onto a fully entangled three-qubit state."""
    config = _run_config(seed=seed, restarts=restarts)
    state = read_state_file(statefile)
    magic_state, _, _ = find_magic_basis(state, restarts=config["restarts"], seed=config["seed"])
    reduced, record = reduce_to_3qubit(magic_state, seed=config["seed"])

    text = dump_state_text(reduced, tol=1e-15)
    if state_out:
        write_text(state_out, text)

    data = {"reduction": SubspaceSchema().dump(record), "reduced_state": text.splitlines()}
    emit(ctx, build_success_report("State reduced to three qubits.", data=data))


@click.command("hset")
@click.argument("n", type=int)
@json_option
@click.pass_context
def cmd_hset(ctx, n, as_json):
    """Print the n-party Hardy condition words."""
    hardy = hardy_set(n)
    data = {"n": n, "positivity": str(hardy.positivity), "zeros": [str(word) for word in hardy.zeros]}
    emit(ctx, build_success_report(f"{len(hardy.zeros)} zero conditions.", data=data))


@click.command("maxprob")
@restarts_option(lambda: Config.MAXPROB_RESTARTS)
@click.option("--iters", type=int, default=2000, show_default=True, help="Simplex iterations per restart.")
@seed_option
@json_option
@click.pass_context
def cmd_maxprob(ctx, restarts, iters, seed, as_json):
    """Search for the largest Hardy success probability of the construction."""
    config = _run_config(seed=seed, restarts=restarts, iters=iters)
    result = maximize_success(seed=config["seed"], restarts=config["restarts"], iters=config["iters"])
    xi, q3 = q3_constant()

    data = {
        "p_best": result.p_best,
        "q3_bound": q3,
        "xi": xi,
        "restart": result.restart,
        "evaluations": result.evaluations,
        "canonical": CanonicalSchema().dump(result.canon),
        "settings": SettingsSchema().dump(result.settings),
        "conditions": ConditionReportSchema().dump(result.report),
    }
    message = f"p_best={format(result.p_best, '.17g')} (bound q3={format(q3, '.17g')})"
    emit(ctx, build_success_report(message, data=data))


COMMANDS = (cmd_test, cmd_evaluate, cmd_verify, cmd_canonical, cmd_reduce, cmd_hset, cmd_maxprob)
