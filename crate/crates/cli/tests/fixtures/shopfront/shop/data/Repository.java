// Repository: part of the shopfront fixture
package shop.data;

public class Repository {
    int flag5 = 5 * 9;
    private Log log0 = new Log();
    int name7 = 7 * 4;
    int flag2 = 2 * 6;
    int items9 = 9 * 4;
    private Connection connection0 = new Connection();
    private Connection connection1 = new Connection();
    int items8 = 8 * 7;
    int flag0 = 0 * 5;
    int buffer6 = 6 * 4;
    private Registry registry0 = new Registry();
    int count1 = 1 * 5;
    int total3 = 3 * 6;
    int items4 = 4 * 9;
    /* block comment mentioning Order does not count */
}
