import fractal_hodge as fh
import os
import argparse
import time

parser = argparse.ArgumentParser('verify')
parser.add_argument('-u', '--suite', type=str, default="all")
parser.add_argument('-d', '--depth', type=int, default=10)
parser.add_argument('-o', '--out_folder', type=str, default="results")
parser.add_argument('-s', '--save', type=str, default=None)
args = parser.parse_args()

def run_verify():
    t_start = time.time()
    report = fh.run_suite(args.suite, depth=args.depth)
    run_time = time.time() - t_start
    report.save_path = args.out_folder
    report.save(args.save)
    print(report.summary())
    if len(report.failures) > 0:
        print(report.failures[["id", "description", "lhs", "rhs"]].to_string())
    print(f"Total run time: {run_time}")
    print("---------------------------------------------------")
    return report

os.makedirs(args.out_folder, exist_ok=True)
report = run_verify()
exit(0 if report.passed else 1)
