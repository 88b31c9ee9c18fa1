"""
UtilityIst.py
Command-line entry point for the nonlocal inverse scattering toolkit
Last updated: 2026-10-19

USAGE:
    python UtilityIst.py eval --family sinh-dark1 --q0 2 --alpha 1 \\
        --theta-plus 1.0471975512 --grid -6:6:0.01,-4:4:0.05 --output fig1.csv
    python UtilityIst.py verify --family nls-case2-two --q0 2 --q1 4 --d1 1 --d2 -1
    python UtilityIst.py trace --case sinh0 --eigs "2@1.0472" --theta-plus 1.0472
    python UtilityIst.py scatter --family sinh-dark1 --data sinh_dark1.data.json
    python UtilityIst.py reconstruct --data sinh_dark1.data.json --kind sinh-gordon
    python UtilityIst.py roundtrip --family nls-case3-dark

VERBS:
    eval         sample a closed-form solution on a grid (CSV + sidecar JSON)
    scatter      a(ξ), b(ξ) on the continuous spectrum and the located eigenvalues
    reconstruct  scattering-data JSON → q on a grid
    trace        a′(z_j), ā′(z̄_j) and the reflectionless constraint for given eigenvalues
    verify       residual / s / boundary / singularity report for a family
    roundtrip    closed form → direct scattering → reconstruction, max deviation

EXIT CODES:
    0  success
    1  usage or domain error (message on stderr)
    2  verification failed
"""

import argparse
import cmath
import logging
import math
import os
import sys
from datetime import datetime

import numpy as np

import Config
import ClosedForm
import DirectScattering
import ExportGrid
import InverseReflectionless
import ModelConfig
import Parallel
import ScatteringData
import Verify
from Errors import IstError, UsageError
from SpectralPlane import PhaseSum, SymmetryCase, phase_sum

logger = logging.getLogger(__name__)

VERBS = ('eval', 'scatter', 'reconstruct', 'trace', 'verify', 'roundtrip')


# =============================================================================
# ARGUMENT PARSING
# =============================================================================

def build_parser():
    parser = argparse.ArgumentParser(
        prog='UtilityIst.py',
        description='Inverse scattering for the nonlocal reverse-space-time '
                    'sine-Gordon, sinh-Gordon and NLS equations')
    parser.add_argument('verb', choices=VERBS, help='What to run')

    spec = parser.add_argument_group('equation')
    spec.add_argument('--config', default=None,
                      help='key = value or JSON file with kind, sigma, q0, theta_plus, '
                           'theta_minus, alpha, beta')
    spec.add_argument('--kind', default=None, help='sinh-gordon, sine-gordon or rst-nls')
    spec.add_argument('--sigma', type=int, default=None, choices=(1, -1))
    spec.add_argument('--q0', type=float, default=Config.FIGURE_Q0)
    spec.add_argument('--theta-plus', type=float, default=None)
    spec.add_argument('--theta-minus', type=float, default=None)
    spec.add_argument('--alpha', type=float, default=None)
    spec.add_argument('--beta', type=float, default=None)

    family = parser.add_argument_group('closed-form family')
    family.add_argument('--family', default=None,
                        help=f"One of: {', '.join(f.value for f in ClosedForm.Family)}")
    family.add_argument('--d1', type=int, default=1, choices=(1, -1))
    family.add_argument('--d2', type=int, default=-1, choices=(1, -1))
    family.add_argument('--q1', type=float, default=None)
    family.add_argument('--boost', type=float, default=None,
                        help='Galilean boost velocity applied to an RST-NLS family')

    spectral = parser.add_argument_group('spectral data')
    spectral.add_argument('--case', default=None, help='sinh0, sinhpi, sinepi or sine0')
    spectral.add_argument('--eigs', default=None, help="Upper eigenvalues as 'r@phi;r@phi'")
    spectral.add_argument('--deltas', default=None, help="δ-signs as '1,-1' (default all +1)")
    spectral.add_argument('--data', default=None, help='Scattering data JSON (read or written)')
    spectral.add_argument('--with-s', action='store_true',
                          help='reconstruct: also compute s by quadrature (Gordon only)')

    out = parser.add_argument_group('output')
    out.add_argument('--grid', default=None, help="'lo:hi:step,lo:hi:step' for x then t")
    out.add_argument('--output', default=None, help='Output path')
    out.add_argument('--format', default='csv', choices=('csv', 'json'))
    out.add_argument('--threads', type=int, default=None,
                     help=f'Worker threads (0 = auto; overrides {Config.THREADS_ENV_VAR})')
    out.add_argument('--verbose', '-v', action='count', default=0)
    return parser


def parse_eigs(text):
    """'r@phi;r@phi' → [r e^{iφ}, ...].

    Examples:
        '2@1.0472'      → [2e^{1.0472i}]
        '4@1.5708;1@-1.5708' → [4i, −i] (to rounding)
    """
    if not text:
        raise UsageError("--eigs is required, e.g. --eigs '2@1.0472'")
    zs = []
    for chunk in text.replace(' ', '').split(';'):
        if not chunk:
            continue
        try:
            r, phi = (float(v) for v in chunk.split('@'))
        except ValueError as e:
            raise UsageError(f"Eigenvalue {chunk!r} is not 'r@phi'") from e
        zs.append(r * cmath.exp(1j * phi))
    if not zs:
        raise UsageError("--eigs lists no eigenvalues")
    return zs


def parse_deltas(text, n):
    if not text:
        return [1] * n
    try:
        deltas = [int(v) for v in text.replace(' ', '').split(',') if v]
    except ValueError as e:
        raise UsageError(f"--deltas {text!r} must be comma-separated ±1") from e
    if len(deltas) != n:
        raise UsageError(f"--deltas gives {len(deltas)} signs for {n} eigenvalue(s)")
    return deltas


def _grid(args, default=Config.DEFAULT_GRID):
    return Verify.Grid.parse(args.grid or default)


def _spec_from_flags(args):
    """EquationSpec from --config or the inline equation flags."""
    if args.config:
        return ModelConfig.load_spec(args.config)
    if not args.kind:
        raise UsageError("Give --config, --family or --kind with the background flags")
    data = {'kind': args.kind, 'q0': args.q0}
    if args.sigma is not None:
        data['sigma'] = args.sigma
    for key in ('theta_plus', 'theta_minus', 'alpha', 'beta'):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    kind = ModelConfig.EquationKind.parse(args.kind)
    if 'theta_plus' not in data:
        data['theta_plus'] = Config.FIGURE_THETA_PLUS
    if 'theta_minus' not in data:
        raise UsageError("--theta-minus is required with --kind (it fixes the phase sum)")
    if 'alpha' not in data:
        if kind is ModelConfig.EquationKind.RST_NLS:
            sigma = data.get('sigma')
            if sigma is None:
                raise UsageError("RST-NLS needs --sigma")
            summ = phase_sum(data['theta_plus'], data['theta_minus'])
            data['alpha'] = ModelConfig.nls_alpha(sigma, args.q0, summ, data.get('beta', 0.0))
        else:
            data['alpha'] = Config.FIGURE_ALPHA
    spec = ModelConfig.spec_from_mapping(data)
    ModelConfig.validate(spec)
    return spec


def _solution(args):
    """FieldSolution named by --family (spec from --config or figure defaults)."""
    if not args.family:
        raise UsageError(f"--family is required for '{args.verb}'")
    deltas = (args.d1, args.d2)
    if args.config:
        spec = ModelConfig.load_spec(args.config)
        try:
            family = ClosedForm.Family(args.family)
        except ValueError as e:
            raise UsageError(f"Unknown family {args.family!r}") from e
        if family.is_two:
            sol_id = ClosedForm.SolutionId(family, deltas, args.q1 or Config.FIGURE_Q1)
        else:
            sol_id = ClosedForm.SolutionId(family)
        sol = ClosedForm.make_solution(sol_id, spec)
    else:
        sol = ClosedForm.build_family(args.family, q0=args.q0, alpha=args.alpha,
                                      theta_plus=args.theta_plus, beta=args.beta,
                                      deltas=deltas, q1=args.q1)
    if args.boost is not None:
        sol = ClosedForm.boost_nls(sol, args.boost)
    return sol


def _metadata(args, spec=None, grid=None, **extra):
    fields = {'verb': args.verb}
    if spec is not None:
        fields['spec'] = ModelConfig.spec_to_dict(spec)
    if grid is not None:
        fields['grid'] = grid.to_dict()
    fields.update(extra)
    return ExportGrid.run_metadata(**fields)


def _output(args, stem):
    return args.output or f"{stem}.{args.format}"


# =============================================================================
# VERBS
# =============================================================================

def cmd_eval(args):
    sol = _solution(args)
    grid = _grid(args)
    frame = ExportGrid.solution_frame(sol, grid)
    path = _output(args, sol.id.family.value)
    meta = _metadata(args, sol.spec, grid, family=sol.id.family.value,
                     deltas=list(sol.id.deltas), q1=sol.id.q1, label=sol.label,
                     singular_lines=[line.to_dict() for line in sol.singular_lines])
    written, side = ExportGrid.write_frame(frame, path, args.format, meta)
    print(f"✅ {sol.label}: {len(frame)} grid points → {written}")
    if side:
        print(f"   metadata → {side}")
    return Config.EXIT_OK


def cmd_scatter(args):
    sol = _solution(args)
    potential = DirectScattering.PotentialSample.from_solution(sol)
    print(f"Direct scattering of {sol.label} on [−{potential.half_width:.3g}, {potential.half_width:.3g}]")
    frame = DirectScattering.sample_contour(potential)
    worst = float(frame['unitarity_defect'].max())
    mark = '✅' if worst <= Config.UNITARITY_TOL else '❌'
    print(f"  {mark} max |aā − bb̄ − 1| on Σ: {worst:.3e} over {len(frame)} points")

    data = DirectScattering.scatter_potential(potential, contour=False)
    for j, d in enumerate(data.discrete, start=1):
        print(f"  z_{j} = {d.z.real:+.10f} {d.z.imag:+.10f}i   b = {d.b.real:+.8f} {d.b.imag:+.8f}i")
    if not data.discrete:
        print("  no eigenvalues in the search region")

    path = _output(args, f"{sol.id.family.value}.contour")
    ExportGrid.write_frame(frame, path, args.format,
                           _metadata(args, sol.spec, family=sol.id.family.value))
    print(f"✅ Contour samples → {path}")
    if args.data:
        ScatteringData.save_data(data, args.data)
        print(f"✅ Scattering data → {args.data}")
    return Config.EXIT_OK


def _spec_for_data(args, data):
    """Spec for reconstruction: explicit flags, else derived from the data's case."""
    if args.config:
        return ModelConfig.load_spec(args.config)
    if not args.kind:
        raise UsageError("reconstruct needs --config or --kind")
    if args.theta_minus is None:
        args.theta_minus = (0.0 if data.case.phase_sum is PhaseSum.ZERO else math.pi) \
            - data.theta_plus
    if args.theta_plus is None:
        args.theta_plus = data.theta_plus
    if args.sigma is None:
        args.sigma = data.case.sigma
    return _spec_from_flags(args)


def cmd_reconstruct(args):
    if not args.data:
        raise UsageError("reconstruct needs --data with a scattering-data JSON file")
    data = ScatteringData.load_data(args.data)
    spec = _spec_for_data(args, data)
    grid = _grid(args)
    started = datetime.now()
    q, mask = InverseReflectionless.reconstruct_grid(data, spec, grid.xs(), grid.ts())
    s = None
    if args.with_s:
        s = InverseReflectionless.recover_s(data, spec, grid)
    frame = ExportGrid.field_frame(grid.xs(), grid.ts(), q, s)
    stem = os.path.splitext(os.path.basename(args.data))[0] + '.q'
    path = _output(args, stem)
    meta = _metadata(args, spec, grid, data=ScatteringData.data_to_dict(data),
                     singular_points=int(mask.sum()))
    ExportGrid.write_frame(frame, path, args.format, meta)
    elapsed = (datetime.now() - started).total_seconds()
    print(f"✅ Reconstructed J={data.J} ({data.case.value}) on {q.size} points in {elapsed:.1f}s → {path}")
    if mask.any():
        print(f"   {int(mask.sum())} grid points sit on poles (blank in output)")
    return Config.EXIT_OK


def cmd_trace(args):
    if not args.case:
        raise UsageError("trace needs --case (sinh0, sinhpi, sinepi or sine0)")
    try:
        case = SymmetryCase(args.case)
    except ValueError as e:
        raise UsageError(f"Unknown case {args.case!r}") from e
    zs = parse_eigs(args.eigs)
    deltas = parse_deltas(args.deltas, len(zs))
    theta = Config.FIGURE_THETA_PLUS if args.theta_plus is None else args.theta_plus
    data = ScatteringData.from_eigenvalues(case, args.q0, theta, zs, deltas)
    print(f"Trace formula, case {case.value}, q0 = {args.q0:g}, θ₊ = {theta:.10g}, J = {data.J}")
    for j, d in enumerate(data.discrete, start=1):
        print(f"  a′(z_{j})  = {d.a_prime.real:+.12f} {d.a_prime.imag:+.12f}i   (z_{j} = {d.z:.10g})")
        print(f"  ā′(z̄_{j}) = {d.a_bar_prime.real:+.12f} {d.a_bar_prime.imag:+.12f}i")
    origin = ScatteringData.a_at_origin(data)
    print(f"  a(0) = {origin.real:+.12f} {origin.imag:+.12f}i")
    report = ScatteringData.validate_constraint(data)
    print(f"✅ Reflectionless constraint holds with sign {report.sign:+d} "
          f"(defect {report.relative_defect:.2e})")
    return Config.EXIT_OK


def cmd_verify(args):
    sol = _solution(args)
    grid = _grid(args)
    report = Verify.verify_solution(sol, grid)
    print(report.table())
    print()
    print(report.to_frame().to_string(index=False))
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as fh:
            fh.write(report.to_json())
        print(f"Report → {args.output}")
    if report.verdict:
        print(f"✅ {report.label}: pass")
        return Config.EXIT_OK
    print(f"❌ {report.label}: fail")
    return Config.EXIT_VERIFY_FAIL


def roundtrip_deviation(sol, grid):
    """Closed form → scattering data → reconstruction; sup deviation off singular lines.

    Returns:
        (deviation, ScatteringData)
    """
    potential = DirectScattering.PotentialSample.from_solution(sol)
    data = DirectScattering.scatter_potential(potential)
    X, T = grid.mesh()
    q_rec, _ = InverseReflectionless.reconstruct_grid(data, sol.spec, grid.xs(), grid.ts())
    q_ref = sol.q(X, T)
    keep = Verify.exclusion_mask(sol, X, T, grid.exclusion_margin)
    keep &= np.isfinite(q_ref) & np.isfinite(q_rec)
    deviation = float(np.max(np.abs(q_rec[keep] - q_ref[keep]))) if keep.any() else float('inf')
    return deviation, data


def cmd_roundtrip(args):
    sol = _solution(args)
    grid = _grid(args, Config.ROUNDTRIP_GRID)
    deviation, data = roundtrip_deviation(sol, grid)
    print(f"Round trip {sol.label}: J = {data.J}, "
          f"eigenvalues {', '.join(f'{z:.8g}' for z in data.eigenvalues)}")
    if args.data:
        ScatteringData.save_data(data, args.data)
    if deviation <= Config.TOL_ROUNDTRIP:
        print(f"✅ max |q_rec − q| = {deviation:.3e} (tol {Config.TOL_ROUNDTRIP:.0e})")
        return Config.EXIT_OK
    print(f"❌ max |q_rec − q| = {deviation:.3e} (tol {Config.TOL_ROUNDTRIP:.0e})")
    return Config.EXIT_VERIFY_FAIL


_COMMANDS = {
    'eval': cmd_eval,
    'scatter': cmd_scatter,
    'reconstruct': cmd_reconstruct,
    'trace': cmd_trace,
    'verify': cmd_verify,
    'roundtrip': cmd_roundtrip,
}


# =============================================================================
# ENTRY POINT
# =============================================================================

def run(argv=None):
    """Parse argv, dispatch the verb, and map errors onto exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return Config.EXIT_OK if e.code == 0 else Config.EXIT_USAGE

    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    if args.threads is not None:
        Parallel.set_thread_count(args.threads)

    try:
        return _COMMANDS[args.verb](args)
    except (IstError, FileNotFoundError, ValueError) as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return Config.EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
