package sqlstore.db;

import java.util.ArrayDeque;
import java.util.Deque;

public class ConnectionPool {
    private final Deque<Connection> idle = new ArrayDeque<>();
    private final String url;
    private final int capacity;

    public ConnectionPool(String url, int capacity) {
        this.url = url;
        this.capacity = capacity;
    }

    public Connection borrow() {
        Connection conn = idle.poll();
        return conn != null ? conn : new Connection(url);
    }

    public void release(Connection conn) {
        if (idle.size() < capacity) {
            idle.push(conn);
        }
    }

    public void drain() {
        idle.clear();
    }
}
