# cli/cli_router.py
import click

from cli.commands import (

    # ========= Patterns =========
    patterns,

    # ========= Exact solvers =========
    solvers,

    # ========= Verifiers & decompositions =========
    verify,

    # ========= Constructions & bounds =========
    constructions,

    # ========= Sweeps & cross-checks =========
    sweeps,
)

cli_router = click.Group()


def include_router(target: click.Group, router: click.Group) -> None:
    for name, command in router.commands.items():
        target.add_command(command, name)


# ======================================================
# 1️⃣ Pattern generators: gen
# ======================================================
include_router(cli_router, patterns.router)

# ======================================================
# 2️⃣ Exact solvers: tw, pw, minor, linked
# ======================================================
include_router(cli_router, solvers.router)

# ======================================================
# 3️⃣ Verifiers: verify-model, verify-cert, verify-decomp, compactify
# ======================================================
include_router(cli_router, verify.router)

# ======================================================
# 4️⃣ Constructions: embed, bound
# ======================================================
include_router(cli_router, constructions.router)

# ======================================================
# 5️⃣ Sweeps: sweep, cross-check
# ======================================================
include_router(cli_router, sweeps.router)
