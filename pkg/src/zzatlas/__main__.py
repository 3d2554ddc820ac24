from zzatlas.cli import run

run()
