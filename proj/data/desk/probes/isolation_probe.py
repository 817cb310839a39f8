import os, socket
results = []
try:
    s = socket.create_connection(("1.1.1.1", 80), timeout=1)
    results.append("net:open")
except OSError:
    results.append("net:blocked")
try:
    with open("escape.txt", "w") as f:
        f.write("x")
    results.append("write:open")
except OSError:
    results.append("write:blocked")
try:
    os.listdir("/root")
    results.append("root:" + ("visible" if os.listdir("/root") else "empty"))
except OSError:
    results.append("root:blocked")
results.append("uid:%d" % os.getuid())
print(" ".join(results))
