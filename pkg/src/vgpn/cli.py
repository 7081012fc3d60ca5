"""Command-line interface.

    vgpn parse "go to that chair"
    vgpn run scenario.json --out results/
    vgpn bench efficiency --scene unique_door --trials 100 --seed 7
    vgpn bench accuracy --scene accuracy_room --trials 1000 --sigma 0.01
    vgpn bench samediff --scene diff_pair --target chair1 --distractor bed1
    vgpn serve --port 8080

Scene arguments accept file paths or packaged preset names.  Bench and run
exit nonzero when a report assertion fails.
"""

from __future__ import annotations

import sys

import click

from .errors import VgpnError
from .harness import (
    PRESET_SCENES,
    Report,
    ScenarioSpec,
    load_scenario,
    run_scenario,
)
from .language import (
    canonical_string,
    instantiate,
    load_lexicon,
    load_templates,
    parse_dependencies,
    tokenize,
)


def _finish(report: Report, out: str | None) -> None:
    click.echo(report.to_text())
    if out:
        for path in report.write(out):
            click.echo(f"wrote {path}")
    if not report.ok:
        sys.exit(1)


@click.group()
def main():
    """Voice-guided pointing navigation simulator."""


@main.command("parse")
@click.argument("text")
@click.option("--lexicon", "lexicon_path", default=None,
              type=click.Path(exists=True), help="Lexicon file override.")
@click.option("--templates", "templates_path", default=None,
              type=click.Path(exists=True), help="Template registry override.")
def parse_cmd(text, lexicon_path, templates_path):
    """Show tokens, dependency tree, canonical string and instruction."""
    try:
        lexicon = load_lexicon(lexicon_path)
        registry = load_templates(templates_path)
        tokens = tokenize(text, lexicon)
        click.echo("tokens:")
        for tok in tokens:
            click.echo(f"  [{tok.index}] {tok.surface} -> {tok.lemma}/{tok.pos}")
        model = parse_dependencies(tokens)
        click.echo("dependencies:")
        for node in model.nodes:
            parent = ("ROOT" if node.parent < 0
                      else model.tokens[node.parent].surface)
            click.echo(f"  {model.tokens[node.token_index].surface} "
                       f"--{node.relation}--> {parent}")
        canonical = canonical_string(model)
        click.echo(f"canonical: {canonical}")
        template = registry.match(canonical)
        instruction = instantiate(template, model)
        click.echo(f"template:  {template.name}")
        click.echo(f"instruction: {instruction}")
    except VgpnError as exc:
        raise click.ClickException(str(exc))


@main.command("run")
@click.argument("scenario_file", type=click.Path(exists=True))
@click.option("--out", default=None, help="Directory for CSV/text reports.")
def run_cmd(scenario_file, out):
    """Run a scenario file (kind: efficiency | accuracy | samediff)."""
    try:
        report = run_scenario(load_scenario(scenario_file))
    except VgpnError as exc:
        raise click.ClickException(str(exc))
    _finish(report, out)


def _bench_options(func):
    options = [
        click.option("--scene", required=True,
                     help=f"Scene file or preset ({', '.join(PRESET_SCENES)})."),
        click.option("--trials", default=100, show_default=True),
        click.option("--seed", default=2024, show_default=True),
        click.option("--sigma", default=0.01, show_default=True,
                     help="Keypoint noise sigma (m)."),
        click.option("--out", default=None, help="Directory for reports."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@main.group()
def bench():
    """Reproduce the efficiency / accuracy / SAME-DIFF experiment designs."""


@bench.command("efficiency")
@_bench_options
@click.option("--command", default="go to that door", show_default=True)
def bench_efficiency(scene, trials, seed, sigma, out, command):
    spec = ScenarioSpec(kind="efficiency", scene=scene, trials=trials,
                        seed=seed, sigma=sigma, command=command)
    _run_spec(spec, out)


@bench.command("accuracy")
@_bench_options
def bench_accuracy(scene, trials, seed, sigma, out):
    spec = ScenarioSpec(kind="accuracy", scene=scene, trials=trials,
                        seed=seed, sigma=sigma)
    _run_spec(spec, out)


@bench.command("samediff")
@_bench_options
@click.option("--command", default="go to that chair", show_default=True)
@click.option("--aim-sigma", default=0.25, show_default=True,
              help="Aim bias spread around the distractor (m).")
@click.option("--target", "target_id", required=True,
              help="Intended object id.")
@click.option("--distractor", "distractor_id", required=True,
              help="Object the aim is biased toward.")
def bench_samediff(scene, trials, seed, sigma, out, command, aim_sigma,
                   target_id, distractor_id):
    spec = ScenarioSpec(kind="samediff", scene=scene, trials=trials, seed=seed,
                        sigma=sigma, aim_sigma=aim_sigma, command=command,
                        target_object_id=target_id,
                        distractor_object_id=distractor_id)
    _run_spec(spec, out)


def _run_spec(spec: ScenarioSpec, out: str | None) -> None:
    try:
        report = run_scenario(spec)
    except VgpnError as exc:
        raise click.ClickException(str(exc))
    _finish(report, out)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True)
def serve_cmd(host, port):
    """Start the session service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
