#!/usr/bin/env python3
"""
快速测试脚本 - 依次运行几个代表性命令并检查退出码
"""
import subprocess
import sys
from pathlib import Path

# (参数, 期望退出码)
CASES = [
    (["fixture", "hankel3"], 0),
    (["certify", "--class", "general", "--n", "3"], 0),
    (["certify", "--class", "toeplitz", "--n", "5"], 0),
    (["tables", "--which", "2", "--max-n", "5"], 0),
    (["toeplitz", "--n", "8"], 2),
]


def run_test():
    """运行快速测试"""
    print("[TEST] 启动BW平方和证书工具快速测试...")
    print("=" * 50)

    failed = 0
    for args, expected in CASES:
        cmd = [sys.executable, "scripts/run_bwsos.py", "--format", "text", *args]
        print(f"[START] {' '.join(args)}")
        try:
            result = subprocess.run(cmd, cwd=Path(__file__).parent, capture_output=True, text=True)
        except KeyboardInterrupt:
            print("\n[STOP] 用户中断")
            return
        except Exception as e:
            print(f"[ERROR] 运行异常: {e}")
            failed += 1
            continue

        if result.returncode == expected:
            print(f"[SUCCESS] 退出码 {result.returncode}")
        else:
            failed += 1
            print(f"[FAILED] 退出码 {result.returncode}，期望 {expected}")
            print(result.stdout[-2000:])

    print("=" * 50)
    print(f"[DONE] {len(CASES) - failed}/{len(CASES)} 通过")


if __name__ == "__main__":
    run_test()
