from prometheus_client import Counter

graph_compositions_total = Counter("tbuchi_graph_compositions_total", "Transformation graph compositions")
